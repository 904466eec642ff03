use serde::{Deserialize, Serialize};

use crate::fgl::{FormalGroupLaw, Theory};
use crate::symbolic::{parse_poly, CoefficientPoly, VarContext};

use super::{AlgebraError, BasisElement, Element, GradedFreeAlgebra};

pub const SCHEMA: &str = "orient.algebra/1";

#[derive(Serialize, Deserialize)]
struct BasisJson {
    label: String,
    degree: i32,
}

#[derive(Serialize, Deserialize)]
struct LawTerm {
    i: u32,
    j: u32,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct LawJson {
    theory: String,
    degree_cap: u32,
    coefficients: Vec<LawTerm>,
}

#[derive(Serialize, Deserialize)]
struct NamedJson {
    name: String,
    element: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    schema: String,
    theory: String,
    law: LawJson,
    dimension: u32,
    graded: bool,
    basis: Vec<BasisJson>,
    unit: usize,
    point_class: Option<usize>,
    names: Vec<NamedJson>,
    /// `table[i][j]` lists the coordinates of `b_i b_j`.
    table: Vec<Vec<Vec<String>>>,
}

pub fn element_strings(e: &Element) -> Vec<String> {
    e.coefficients().iter().map(|c| c.to_string()).collect()
}

pub fn parse_element(strings: &[String], rank: usize) -> Result<Element, AlgebraError> {
    if strings.len() != rank {
        return Err(AlgebraError::Invalid(format!(
            "element has {} coordinates, expected {rank}",
            strings.len()
        )));
    }
    let ctx = VarContext::new();
    let coeffs = strings
        .iter()
        .map(|s| parse_poly(s, &ctx))
        .collect::<Result<Vec<CoefficientPoly>, _>>()?;
    Ok(Element::from_coefficients(coeffs))
}

pub fn to_json(alg: &GradedFreeAlgebra) -> serde_json::Value {
    let n = alg.rank();
    let doc = AlgebraJson {
        schema: SCHEMA.into(),
        theory: alg.law().theory().name().into(),
        law: LawJson {
            theory: alg.law().theory().name().into(),
            degree_cap: alg.law().degree_cap(),
            coefficients: alg
                .law()
                .stored()
                .iter()
                .map(|((i, j), c)| LawTerm {
                    i: *i,
                    j: *j,
                    value: c.to_string(),
                })
                .collect(),
        },
        dimension: alg.dimension(),
        graded: alg.is_graded(),
        basis: alg
            .basis()
            .iter()
            .map(|b| BasisJson {
                label: b.label.clone(),
                degree: b.degree,
            })
            .collect(),
        unit: alg.unit_index(),
        point_class: alg.point_class(),
        names: alg
            .names()
            .iter()
            .map(|(name, e)| NamedJson {
                name: name.clone(),
                element: element_strings(e),
            })
            .collect(),
        table: (0..n)
            .map(|i| (0..n).map(|j| element_strings(alg.product_ref(i, j))).collect())
            .collect(),
    };
    serde_json::to_value(doc).expect("algebra serializes")
}

pub fn from_json(value: &serde_json::Value) -> Result<GradedFreeAlgebra, AlgebraError> {
    let doc: AlgebraJson =
        serde_json::from_value(value.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
    if doc.schema != SCHEMA {
        return Err(AlgebraError::Json(format!("unsupported schema {}", doc.schema)));
    }
    let ctx = VarContext::new();
    let mut coeffs = Vec::new();
    for t in &doc.law.coefficients {
        coeffs.push(((t.i, t.j), parse_poly(&t.value, &ctx)?));
    }
    let law = FormalGroupLaw::from_parts(Theory::parse(&doc.law.theory), doc.law.degree_cap, coeffs)?;
    let n = doc.basis.len();
    if doc.table.len() != n || doc.table.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Json("table is not square".into()));
    }
    let mut table = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..=i {
            let e = parse_element(&doc.table[i][j], n)?;
            if parse_element(&doc.table[j][i], n)? != e {
                return Err(AlgebraError::Json(format!("table is not symmetric at ({i}, {j})")));
            }
            table.push(e);
        }
    }
    let basis = doc
        .basis
        .into_iter()
        .map(|b| BasisElement::new(b.label, b.degree))
        .collect();
    let names = doc
        .names
        .iter()
        .map(|nj| Ok((nj.name.clone(), parse_element(&nj.element, n)?)))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    GradedFreeAlgebra::from_parts(
        basis,
        doc.unit,
        table,
        doc.dimension,
        law,
        doc.graded,
        doc.point_class,
        names,
    )
}
