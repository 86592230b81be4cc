//! Finite linear combinations of diagrams with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::canon::{canonical_form, CanonicalCode};
use crate::diagram::Diagram;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Linear combination of oriented diagrams, keyed by canonical code. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum {
    terms: BTreeMap<CanonicalCode, Q>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let mut s = Self::new();
        s.add_diagram(d, Q::one());
        s
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a Diagram, i64)>) -> Self {
        let mut s = Self::new();
        for (d, c) in terms {
            s.add_diagram(d, q(c));
        }
        s
    }

    pub fn add_term(&mut self, code: CanonicalCode, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(code).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_diagram(&mut self, d: &Diagram, c: Q) {
        self.add_term(canonical_form(d), c);
    }

    pub fn coefficient(&self, code: &CanonicalCode) -> Q {
        self.terms.get(code).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalCode, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        FormalSum { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// The same sum scaled so that its first coefficient is positive.
    pub fn normalized_sign(&self) -> Self {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;

    fn add(mut self, rhs: FormalSum) -> FormalSum {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;

    fn sub(self, rhs: FormalSum) -> FormalSum {
        self + (-rhs)
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;

    fn neg(self) -> FormalSum {
        FormalSum { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let sign = if v.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sign}{}*[{k}]", v.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn cancellation_leaves_no_zero() {
        let t = theta();
        let s = FormalSum::from_diagram(&t) - FormalSum::from_diagram(&t);
        assert!(s.is_empty());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn isomorphic_diagrams_merge() {
        let t = theta();
        let r = t.relabel(&[1, 0], &[1, 2], &[], &[]);
        let s = FormalSum::from_terms([(&t, 2), (&r, 3)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&canonical_form(&t)), q(5));
    }

    #[test]
    fn scaling_by_zero_is_empty() {
        let s = FormalSum::from_diagram(&k4());
        assert!(s.scale(&Q::zero()).is_empty());
        assert_eq!(s.scale(&q(-1)), -s.clone());
        assert_eq!((-s.clone()).normalized_sign(), s);
    }
}
