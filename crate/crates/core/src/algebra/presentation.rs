use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::symbolic::{CoefficientPoly, VarContext, Variable};

use super::{AlgebraError, Element, GradedFreeAlgebra};

/// Generators with degrees and relation polynomials: `scalars[gens]/(rels)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    scalars: String,
    generators: Vec<(String, i32)>,
    relations: Vec<CoefficientPoly>,
}

impl Presentation {
    pub fn new(
        scalars: impl Into<String>,
        generators: Vec<(String, i32)>,
        relations: Vec<CoefficientPoly>,
    ) -> Result<Self, AlgebraError> {
        let p = Presentation {
            scalars: scalars.into(),
            generators,
            relations,
        };
        if let Some(r) = p.relations.iter().find(|r| !r.is_zero() && r.homogeneous_degree().is_none()) {
            return Err(AlgebraError::Grading(format!("relation {r} is not homogeneous")));
        }
        Ok(p)
    }

    pub fn scalars(&self) -> &str {
        &self.scalars
    }

    pub fn generators(&self) -> &[(String, i32)] {
        &self.generators
    }

    pub fn relations(&self) -> &[CoefficientPoly] {
        &self.relations
    }

    pub fn variables(&self) -> Vec<Variable> {
        self.generators
            .iter()
            .map(|(n, d)| Variable::new(n, *d))
            .collect()
    }

    pub fn context(&self) -> VarContext {
        let mut ctx = VarContext::new();
        for v in self.variables() {
            ctx.declare(v);
        }
        ctx
    }

    /// Index of the first relation that does not vanish when generators
    /// are sent to the named classes of `alg`.
    pub fn first_failure(&self, alg: &GradedFreeAlgebra) -> Result<Option<usize>, AlgebraError> {
        let mut assignment: BTreeMap<Variable, Element> = BTreeMap::new();
        for (n, d) in &self.generators {
            let e = alg
                .named(n)
                .ok_or_else(|| AlgebraError::UnknownName(n.clone()))?;
            assignment.insert(Variable::new(n, *d), e.clone());
        }
        for (k, r) in self.relations.iter().enumerate() {
            if !alg.eval_poly(r, &assignment)?.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scalars": self.scalars,
            "generators": self.generators.iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(f, "{}[{}] / (", self.scalars, gens.join(", "))?;
        for (k, r) in self.relations.iter().enumerate() {
            let sep = if k + 1 == self.relations.len() { "" } else { "," };
            writeln!(f, "  {r}{sep}")?;
        }
        write!(f, ")")
    }
}
