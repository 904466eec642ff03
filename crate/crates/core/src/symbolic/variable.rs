use std::fmt;
use std::sync::Arc;

/// A graded polynomial variable. Coefficient variables (Lazard generators
/// `a_ij` and the Bott element `b`) carry nonpositive degree; geometric
/// classes carry positive degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    name: Arc<str>,
    degree: i32,
}

impl Variable {
    pub fn new(name: impl AsRef<str>, degree: i32) -> Self {
        Variable {
            name: Arc::from(name.as_ref()),
            degree,
        }
    }

    /// The Lazard generator `a_ij`, stored with `i <= j` so that `a_21` and
    /// `a_12` are the same variable.
    pub fn lazard(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "lazard indices start at 1");
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let name = if i < 10 && j < 10 {
            format!("a{i}{j}")
        } else {
            format!("a{i}_{j}")
        };
        Variable::new(name, 1 - i as i32 - j as i32)
    }

    /// The Bott element of K-theory, degree -1.
    pub fn beta() -> Self {
        Variable::new("b", -1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// `(i, j)` with `i <= j` when this is a Lazard generator.
    pub fn lazard_indices(&self) -> Option<(u32, u32)> {
        let (i, j) = parse_lazard_name(&self.name)?;
        (self.degree == 1 - i as i32 - j as i32 && i <= j).then_some((i, j))
    }

    pub fn is_beta(&self) -> bool {
        &*self.name == "b" && self.degree == -1
    }

    /// True for variables of the coefficient ring (Lazard generators, `b`).
    pub fn is_coefficient(&self) -> bool {
        self.is_beta() || self.lazard_indices().is_some()
    }
}

/// Parses `aIJ` (single digits) or `aI_J`. Returns the indices as written.
pub(crate) fn parse_lazard_name(name: &str) -> Option<(u32, u32)> {
    let rest = name.strip_prefix('a')?;
    if let Some((i, j)) = rest.split_once('_') {
        let i: u32 = i.parse().ok()?;
        let j: u32 = j.parse().ok()?;
        return (i >= 1 && j >= 1).then_some((i, j));
    }
    let bytes = rest.as_bytes();
    if bytes.len() == 2 && bytes.iter().all(u8::is_ascii_digit) {
        let i = (bytes[0] - b'0') as u32;
        let j = (bytes[1] - b'0') as u32;
        return (i >= 1 && j >= 1).then_some((i, j));
    }
    None
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lazard_is_symmetric() {
        assert_eq!(Variable::lazard(2, 1), Variable::lazard(1, 2));
        assert_eq!(Variable::lazard(2, 1).name(), "a12");
        assert_eq!(Variable::lazard(1, 3).degree(), -3);
        assert_eq!(Variable::lazard(2, 11).name(), "a2_11");
    }

    #[test]
    fn coefficient_detection() {
        assert!(Variable::lazard(2, 2).is_coefficient());
        assert!(Variable::beta().is_coefficient());
        assert!(!Variable::new("alpha", 1).is_coefficient());
        assert!(!Variable::new("a12", 1).is_coefficient());
    }
}
