use super::Membership;
use crate::structures::{embeds, FinStructure, Signature};

/// Structures into which none of the patterns embeds (induced).
#[derive(Clone, Debug)]
pub struct ForbiddenPatterns {
    pub name: String,
    pub sig: Signature,
    pub patterns: Vec<FinStructure>,
}

impl Membership for ForbiddenPatterns {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn signature(&self) -> Signature {
        self.sig
    }

    fn contains(&self, g: &FinStructure) -> bool {
        g.sig() == self.sig && self.patterns.iter().all(|p| !embeds(p, g).unwrap_or(true))
    }

    fn is_hereditary(&self) -> bool {
        true
    }
}

/// An ad-hoc predicate. Declared non-hereditary unless stated otherwise.
pub struct Predicate<F> {
    pub name: String,
    pub sig: Signature,
    pub hereditary: bool,
    pub test: F,
}

impl<F: Fn(&FinStructure) -> bool + Sync> Predicate<F> {
    pub fn new(name: impl Into<String>, sig: Signature, test: F) -> Self {
        Predicate {
            name: name.into(),
            sig,
            hereditary: false,
            test,
        }
    }
}

impl<F: Fn(&FinStructure) -> bool + Sync> Membership for Predicate<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn signature(&self) -> Signature {
        self.sig
    }

    fn contains(&self, g: &FinStructure) -> bool {
        g.sig() == self.sig && (self.test)(g)
    }

    fn is_hereditary(&self) -> bool {
        self.hereditary
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_free() {
        let tri = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = ForbiddenPatterns {
            name: "triangle-free".into(),
            sig: Signature::PlainGraph,
            patterns: vec![tri.clone()],
        };
        assert!(!m.contains(&tri));
        assert!(m.contains(&FinStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()));
    }
}
