use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Names that sort ahead of every other variable, in this order.
const RESERVED: [&str; 9] = ["q", "q1", "q2", "q3", "t", "y", "r", "s", "lambda"];

/// A named indeterminate.
///
/// Variables are ordered by the fixed registry order: the reserved names
/// `q, q1, q2, q3, t, y, r, s, lambda` first, then every other name
/// (edge, vertex and series variables) lexicographically. Two variables
/// with the same name are the same variable.
#[derive(Clone)]
pub struct Var {
    rank: u8,
    name: Arc<str>,
}

impl Var {
    pub fn new(name: &str) -> Self {
        let rank = RESERVED
            .iter()
            .position(|r| *r == name)
            .unwrap_or(RESERVED.len()) as u8;
        Var {
            rank,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.name == other.name
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl From<&str> for Var {
    fn from(name: &str) -> Self {
        Var::new(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_order() {
        let mut vars: Vec<Var> = ["v:1", "lambda", "q2", "q", "w:a", "t", "v:0", "s", "y"]
            .iter()
            .map(|n| Var::new(n))
            .collect();
        vars.sort();
        let names: Vec<&str> = vars.iter().map(Var::name).collect();
        assert_eq!(names, ["q", "q2", "t", "y", "s", "lambda", "v:0", "v:1", "w:a"]);
    }
}
