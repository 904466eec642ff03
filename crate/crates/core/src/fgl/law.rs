use std::collections::BTreeMap;
use std::fmt;

use crate::symbolic::{CoefficientPoly, SymbolicError, Variable};

use super::FglError;

/// Which oriented theory a law (and every algebra built over it) belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    Universal,
    Chow,
    KTheory,
    Custom(String),
}

impl Theory {
    pub fn name(&self) -> &str {
        match self {
            Theory::Universal => "universal",
            Theory::Chow => "chow",
            Theory::KTheory => "ktheory",
            Theory::Custom(s) => s,
        }
    }

    pub fn parse(s: &str) -> Theory {
        match s {
            "universal" => Theory::Universal,
            "chow" => Theory::Chow,
            "ktheory" => Theory::KTheory,
            other => Theory::Custom(other.to_string()),
        }
    }

    /// Human description of the coefficient ring of a point.
    pub fn scalar_ring(&self) -> &'static str {
        match self {
            Theory::Universal => "ZZ[a_ij]",
            Theory::Chow => "ZZ",
            Theory::KTheory => "ZZ[b, b^-1]",
            Theory::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A truncated commutative formal group law
/// `F(x,y) = x + y + sum a_ij x^i y^j` with `i + j <= degree_cap + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    theory: Theory,
    degree_cap: u32,
    // keyed by (i, j) with i <= j; zero coefficients are not stored
    coeffs: BTreeMap<(u32, u32), CoefficientPoly>,
}

impl FormalGroupLaw {
    /// Free generators `a_ij`, `i <= j`, without Lazard relations.
    pub fn universal(degree_cap: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        for s in 2..=degree_cap + 1 {
            for i in 1..=s / 2 {
                coeffs.insert((i, s - i), CoefficientPoly::lazard(i, s - i));
            }
        }
        FormalGroupLaw {
            theory: Theory::Universal,
            degree_cap,
            coeffs,
        }
    }

    /// The additive law `x + y`.
    pub fn chow(degree_cap: u32) -> Self {
        FormalGroupLaw {
            theory: Theory::Chow,
            degree_cap,
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative law `x + y - b x y`.
    pub fn ktheory(degree_cap: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if degree_cap >= 1 {
            coeffs.insert((1, 1), -CoefficientPoly::beta());
        }
        FormalGroupLaw {
            theory: Theory::KTheory,
            degree_cap,
            coeffs,
        }
    }

    pub fn for_theory(theory: &Theory, degree_cap: u32) -> Result<Self, FglError> {
        match theory {
            Theory::Universal => Ok(Self::universal(degree_cap)),
            Theory::Chow => Ok(Self::chow(degree_cap)),
            Theory::KTheory => Ok(Self::ktheory(degree_cap)),
            Theory::Custom(name) => Err(FglError::UnknownTheory(name.clone())),
        }
    }

    /// A law with caller-chosen coefficients. Entries given for both
    /// `(i, j)` and `(j, i)` must agree.
    pub fn custom(
        name: &str,
        degree_cap: u32,
        entries: impl IntoIterator<Item = ((u32, u32), CoefficientPoly)>,
    ) -> Result<Self, FglError> {
        let mut coeffs: BTreeMap<(u32, u32), CoefficientPoly> = BTreeMap::new();
        for ((i, j), c) in entries {
            if i == 0 || j == 0 || i + j > degree_cap + 1 {
                return Err(FglError::CoefficientOutOfRange(i, j));
            }
            let key = (i.min(j), i.max(j));
            if let Some(prev) = coeffs.get(&key) {
                if *prev != c {
                    return Err(FglError::Asymmetric(i, j));
                }
            }
            if !c.is_zero() {
                coeffs.insert(key, c);
            }
        }
        Ok(FormalGroupLaw {
            theory: Theory::Custom(name.to_string()),
            degree_cap,
            coeffs,
        })
    }

    /// Reassembles a law from its stored coefficients (keys with `i <= j`).
    pub fn from_parts(
        theory: Theory,
        degree_cap: u32,
        entries: impl IntoIterator<Item = ((u32, u32), CoefficientPoly)>,
    ) -> Result<Self, FglError> {
        let mut law = Self::custom(theory.name(), degree_cap, entries)?;
        law.theory = theory;
        Ok(law)
    }

    /// The same theory at a different truncation level. Custom laws keep
    /// their coefficients, dropping those beyond the new cap.
    pub fn with_cap(&self, degree_cap: u32) -> Self {
        match &self.theory {
            Theory::Universal => Self::universal(degree_cap),
            Theory::Chow => Self::chow(degree_cap),
            Theory::KTheory => Self::ktheory(degree_cap),
            Theory::Custom(_) => FormalGroupLaw {
                theory: self.theory.clone(),
                degree_cap,
                coeffs: self
                    .coeffs
                    .iter()
                    .filter(|((i, j), _)| i + j <= degree_cap + 1)
                    .map(|(k, v)| (*k, v.clone()))
                    .collect(),
            },
        }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Coefficient of `x^i y^j`; symmetric in `(i, j)`.
    pub fn coeff(&self, i: u32, j: u32) -> CoefficientPoly {
        self.coeffs
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_default()
    }

    /// Every nonzero term as `((i, j), a_ij)`, listing both orders.
    pub fn ordered_terms(&self) -> Vec<((u32, u32), &CoefficientPoly)> {
        let mut out = Vec::new();
        for ((i, j), c) in &self.coeffs {
            out.push(((*i, *j), c));
            if i != j {
                out.push(((*j, *i), c));
            }
        }
        out
    }

    /// Stored coefficients keyed with `i <= j`.
    pub fn stored(&self) -> &BTreeMap<(u32, u32), CoefficientPoly> {
        &self.coeffs
    }

    pub fn specialize(&self, spec: &Specialization) -> Result<Self, SymbolicError> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            let img = spec.apply(c)?;
            if !img.is_zero() {
                coeffs.insert(*k, img);
            }
        }
        Ok(FormalGroupLaw {
            theory: spec.target_theory(&self.theory),
            degree_cap: self.degree_cap,
            coeffs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Step {
    assignment: BTreeMap<Variable, CoefficientPoly>,
    zero_other_lazard: bool,
    waive_grading: bool,
}

/// A coefficient-ring morphism out of the Lazard ring, applied by
/// substitution. Steps compose left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    name: String,
    target: Option<Theory>,
    steps: Vec<Step>,
}

impl Specialization {
    pub fn identity() -> Self {
        Specialization {
            name: "identity".into(),
            target: None,
            steps: Vec::new(),
        }
    }

    /// All `a_ij -> 0`.
    pub fn chow() -> Self {
        Specialization {
            name: "chow".into(),
            target: Some(Theory::Chow),
            steps: vec![Step {
                assignment: BTreeMap::new(),
                zero_other_lazard: true,
                waive_grading: false,
            }],
        }
    }

    /// `a11 -> -b`, other `a_ij -> 0`.
    pub fn ktheory() -> Self {
        Self::lazard_only("ktheory", Theory::KTheory, -CoefficientPoly::beta())
    }

    /// `a11 -> b`, other `a_ij -> 0`; the sign used for moduli of curves.
    pub fn ktheory_positive() -> Self {
        Self::lazard_only("ktheory+", Theory::Custom("ktheory+".into()), CoefficientPoly::beta())
    }

    fn lazard_only(name: &str, target: Theory, a11: CoefficientPoly) -> Self {
        let mut assignment = BTreeMap::new();
        assignment.insert(Variable::lazard(1, 1), a11);
        Specialization {
            name: name.into(),
            target: Some(target),
            steps: vec![Step {
                assignment,
                zero_other_lazard: true,
                waive_grading: false,
            }],
        }
    }

    /// `b -> value`. Not graded, so the grading check is waived.
    pub fn beta_value(value: i64) -> Self {
        let mut assignment = BTreeMap::new();
        assignment.insert(Variable::beta(), CoefficientPoly::constant(value));
        Specialization {
            name: format!("b={value}"),
            target: None,
            steps: vec![Step {
                assignment,
                zero_other_lazard: false,
                waive_grading: true,
            }],
        }
    }

    /// Arbitrary substitution; `waive_grading` allows inhomogeneous images.
    pub fn custom(
        name: &str,
        target: Option<Theory>,
        assignment: BTreeMap<Variable, CoefficientPoly>,
        waive_grading: bool,
    ) -> Self {
        Specialization {
            name: name.into(),
            target,
            steps: vec![Step {
                assignment,
                zero_other_lazard: false,
                waive_grading,
            }],
        }
    }

    pub fn then(mut self, next: Specialization) -> Self {
        self.name = format!("{} then {}", self.name, next.name);
        if next.target.is_some() {
            self.target = next.target;
        }
        self.steps.extend(next.steps);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// True if some step gives up the grading.
    pub fn waives_grading(&self) -> bool {
        self.steps.iter().any(|s| s.waive_grading)
    }

    pub fn target_theory(&self, source: &Theory) -> Theory {
        match (&self.target, self.waives_grading()) {
            (Some(t), false) => t.clone(),
            (target, true) => Theory::Custom(format!(
                "{}/{}",
                target.as_ref().unwrap_or(source).name(),
                self.name
            )),
            (None, false) => source.clone(),
        }
    }

    pub fn apply(&self, p: &CoefficientPoly) -> Result<CoefficientPoly, SymbolicError> {
        let mut cur = p.clone();
        for step in &self.steps {
            let mut assignment = step.assignment.clone();
            if step.zero_other_lazard {
                for v in cur.variables() {
                    if v.lazard_indices().is_some() && !assignment.contains_key(&v) {
                        assignment.insert(v, CoefficientPoly::zero());
                    }
                }
            }
            cur = cur.substitute(&assignment, step.waive_grading)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_coefficients() {
        let f = FormalGroupLaw::universal(3);
        let keys: Vec<_> = f.stored().keys().copied().collect();
        assert_eq!(keys, vec![(1, 1), (1, 2), (1, 3), (2, 2)]);
        assert_eq!(f.coeff(2, 1), f.coeff(1, 2));
    }

    #[test]
    fn specialization_targets() {
        let f = FormalGroupLaw::universal(3);
        assert_eq!(f.specialize(&Specialization::chow()).unwrap(), FormalGroupLaw::chow(3));
        assert_eq!(f.specialize(&Specialization::ktheory()).unwrap(), FormalGroupLaw::ktheory(3));
    }

    #[test]
    fn custom_rejects_asymmetry() {
        let a = CoefficientPoly::lazard(1, 2);
        let entries = vec![((2, 1), a.clone()), ((1, 2), a.scale(&2.into()))];
        assert!(FormalGroupLaw::custom("bad", 2, entries).is_err());
    }
}
