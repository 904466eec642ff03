use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{GradedFreeAlgebra, Presentation};
use crate::catalog::{
    blowup_twisted_cubic, law_for, blowup_veronese, del_pezzo, m0n_ring, p1xp1, projective, twisted_cubic_presentation,
    veronese_presentation, CatalogError, DelPezzoBase,
};
use crate::constructions::point_algebra;
use crate::fgl::Theory;
use crate::symbolic::{parse_poly, VarContext};

/// A catalog space named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Point,
    Projective(u32),
    P1xP1,
    DelPezzo(usize),
    TwistedCubic,
    Veronese,
    M0n(usize),
}

impl FromStr for Space {
    type Err = String;

    /// `point`, `p<n>`, `p1xp1`, `dp<k>`, `blc-p3`, `blv-p5`, `m0n<n>`; a
    /// `:` may separate the family from its number.
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |rest: &str| rest.trim_start_matches(':').parse::<usize>().map_err(|_| format!("bad space '{s}'"));
        match s {
            "point" | "pt" => Ok(Space::Point),
            "p1xp1" => Ok(Space::P1xP1),
            "blc-p3" => Ok(Space::TwistedCubic),
            "blv-p5" => Ok(Space::Veronese),
            _ if s.starts_with("dp") => Ok(Space::DelPezzo(num(&s[2..])?)),
            _ if s.starts_with("m0n") => Ok(Space::M0n(num(&s[3..])?)),
            _ if s.starts_with('p') => Ok(Space::Projective(num(&s[1..])? as u32)),
            _ => Err(format!("unknown space '{s}'")),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Point => write!(f, "point"),
            Space::Projective(n) => write!(f, "p{n}"),
            Space::P1xP1 => write!(f, "p1xp1"),
            Space::DelPezzo(k) => write!(f, "dp{k}"),
            Space::TwistedCubic => write!(f, "blc-p3"),
            Space::Veronese => write!(f, "blv-p5"),
            Space::M0n(n) => write!(f, "m0n{n}"),
        }
    }
}

/// A built space with its presentation.
pub struct Built {
    pub algebra: Arc<GradedFreeAlgebra>,
    pub presentation: Presentation,
}

pub fn build(space: Space, theory: &Theory, allow_large: bool) -> Result<Built, CatalogError> {
    let scalars = theory.scalar_ring();
    Ok(match space {
        Space::Point => {
            let law = law_for(theory, 1)?;
            Built {
                algebra: Arc::new(point_algebra(&law)),
                presentation: Presentation::new(scalars, Vec::new(), Vec::new())?,
            }
        }
        Space::Projective(n) => {
            let p = projective(theory, n, "h")?;
            let ctx = VarContext::new().with("h", 1);
            Built {
                algebra: p.algebra,
                presentation: Presentation::new(
                    scalars,
                    vec![("h".into(), 1)],
                    vec![parse_poly(&format!("h^{}", n + 1), &ctx)?],
                )?,
            }
        }
        Space::P1xP1 => {
            let (algebra, presentation) = p1xp1(theory)?;
            Built { algebra, presentation }
        }
        Space::DelPezzo(k) => {
            let dp = del_pezzo(theory, k, DelPezzoBase::P2)?;
            Built {
                algebra: dp.algebra,
                presentation: dp.presentation,
            }
        }
        Space::TwistedCubic => {
            let tc = blowup_twisted_cubic(theory)?;
            let presentation = twisted_cubic_presentation(theory, &tc)?;
            Built {
                algebra: tc.blowup.algebra,
                presentation,
            }
        }
        Space::Veronese => {
            let v = blowup_veronese(theory)?;
            let presentation = veronese_presentation(theory, &v)?;
            Built {
                algebra: v.blowup.algebra,
                presentation,
            }
        }
        Space::M0n(n) => {
            let r = m0n_ring(theory, n, allow_large)?;
            Built {
                algebra: r.algebra,
                presentation: r.presentation,
            }
        }
    })
}

/// Named classes sorted by `(degree, name)`.
pub fn sorted_names(alg: &GradedFreeAlgebra) -> Vec<String> {
    let by: BTreeMap<(i32, String), ()> = alg
        .names()
        .iter()
        .map(|(n, e)| ((alg.degree_of(e).unwrap_or(0), n.clone()), ()))
        .collect();
    by.into_keys().map(|(_, n)| n).collect()
}
