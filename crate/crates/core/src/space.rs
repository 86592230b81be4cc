//! Quotient spaces of diagrams modulo local relations.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::CanonicalCode;
use crate::classform::{class_form, ClassCode};
use crate::enumerate::{default_max_classes, enumerate_classes, DiagramClass, EnumSpec};
use crate::error::{Error, Result};
use crate::formal::{q, FormalSum, Q};
use crate::linalg::{self, row_reduce, Echelon, SparseMatrix};
use crate::relations::{relations, RelationSelector};

/// Parameters of a quotient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSpec {
    pub degree: usize,
    pub circles: usize,
    pub selector: RelationSelector,
    pub connected_only: bool,
    pub allow_self_loops: bool,
    /// Exact legs per circle, if prescribed.
    pub leg_profile: Option<Vec<usize>>,
    pub max_classes: usize,
}

impl SpaceSpec {
    /// Closed diagrams modulo AS and IHX.
    pub fn closed(degree: usize) -> Self {
        SpaceSpec {
            degree,
            circles: 0,
            selector: RelationSelector::AsIhx,
            connected_only: false,
            allow_self_loops: false,
            leg_profile: None,
            max_classes: default_max_classes(),
        }
    }

    /// Connected closed diagrams modulo AS and IHX.
    pub fn connected_closed(degree: usize) -> Self {
        Self::closed(degree).connected(true)
    }

    /// Diagrams on `circles` ordered circles modulo AS, IHX and STU.
    pub fn on_circles(degree: usize, circles: usize) -> Self {
        SpaceSpec { circles, selector: RelationSelector::AsIhxStu, ..Self::closed(degree) }
    }

    pub fn connected(mut self, only: bool) -> Self {
        self.connected_only = only;
        self
    }

    pub fn self_loops(mut self, allow: bool) -> Self {
        self.allow_self_loops = allow;
        self
    }

    pub fn selector(mut self, selector: RelationSelector) -> Self {
        self.selector = selector;
        self
    }

    pub fn legs(mut self, profile: Vec<usize>) -> Self {
        self.leg_profile = Some(profile);
        self
    }

    pub fn ceiling(mut self, max_classes: usize) -> Self {
        self.max_classes = max_classes;
        self
    }

    fn enum_spec(&self) -> EnumSpec {
        EnumSpec {
            degree: self.degree,
            circles: self.circles,
            allow_self_loops: self.allow_self_loops,
            connected_only: self.connected_only,
            leg_profile: self.leg_profile.clone(),
            max_classes: self.max_classes,
        }
    }
}

/// A space presented by enumerated classes (the columns) and relations (the
/// rows). The basis is the set of columns left without a pivot.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    spec: SpaceSpec,
    classes: Vec<DiagramClass>,
    index: HashMap<ClassCode, usize>,
    relations: Vec<FormalSum>,
    matrix: SparseMatrix,
    echelon: Echelon,
    basis: Vec<usize>,
}

/// Summary of a built space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub degree: usize,
    pub circles: usize,
    pub relations_used: String,
    pub connected_only: bool,
    pub self_loops: bool,
    pub leg_profile: Option<Vec<usize>>,
    pub classes: usize,
    pub zero_classes: usize,
    pub relations: usize,
    pub rank: usize,
    pub basis: Vec<String>,
}

pub fn build_space(spec: &SpaceSpec) -> Result<QuotientSpace> {
    let classes = enumerate_classes(&spec.enum_spec())?;
    let index: HashMap<ClassCode, usize> = classes.iter().enumerate().map(|(i, c)| (c.class.clone(), i)).collect();
    let relations = relations(&classes, spec.selector, spec.circles, spec.allow_self_loops)?;
    let mut space = QuotientSpace {
        spec: spec.clone(),
        classes,
        index,
        relations,
        matrix: SparseMatrix::new(0),
        echelon: row_reduce(&SparseMatrix::new(0))?,
        basis: Vec::new(),
    };
    let rows: Vec<Vec<(usize, Q)>> =
        space.relations.par_iter().map(|r| space.class_vector(r)).collect::<Result<Vec<_>>>()?;
    let mut matrix = SparseMatrix::new(space.classes.len());
    for r in rows {
        matrix.push_row(r);
    }
    space.echelon = row_reduce(&matrix)?;
    space.basis = space.echelon.free_columns();
    space.matrix = matrix;
    Ok(space)
}

impl QuotientSpace {
    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn classes(&self) -> &[DiagramClass] {
        &self.classes
    }

    pub fn relations(&self) -> &[FormalSum] {
        &self.relations
    }

    /// Relation matrix against the enumeration order.
    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Enumeration indices of the basis classes.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_codes(&self) -> Vec<CanonicalCode> {
        self.basis.iter().map(|&i| self.classes[i].rep.clone()).collect()
    }

    /// Column and sign of one oriented diagram, `None` when it vanishes
    /// because it has a self-loop the space excludes.
    pub fn locate(&self, code: &CanonicalCode) -> Result<Option<(usize, i32)>> {
        if code.degree() != self.spec.degree {
            return Err(Error::DegreeMismatch { expected: self.spec.degree, found: code.degree() });
        }
        let d = code.decode()?;
        if d.num_circles() != self.spec.circles {
            return Err(Error::UnknownDiagram(format!(
                "{} circles, space has {}",
                d.num_circles(),
                self.spec.circles
            )));
        }
        if d.has_self_loop() && !self.spec.allow_self_loops {
            return Ok(None);
        }
        let f = class_form(&d);
        match self.index.get(&f.code) {
            Some(&i) => Ok(Some((i, f.sign))),
            None => Err(Error::UnknownDiagram(code.to_string())),
        }
    }

    /// Coordinates of a sum against the enumerated classes.
    pub fn class_vector(&self, s: &FormalSum) -> Result<Vec<(usize, Q)>> {
        let mut acc: HashMap<usize, Q> = HashMap::new();
        for (code, c) in s.iter() {
            if let Some((i, sign)) = self.locate(code)? {
                *acc.entry(i).or_insert_with(Q::zero) += c * q(sign as i64);
            }
        }
        let mut v: Vec<(usize, Q)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    /// Coordinates over the basis.
    pub fn reduce(&self, s: &FormalSum) -> Result<Vec<Q>> {
        let v = self.class_vector(s)?;
        let rest = self.echelon.reduce(&v);
        let mut out = vec![Q::zero(); self.basis.len()];
        for (j, x) in rest {
            let k = self.basis.binary_search(&j).expect("reduced vectors live on free columns");
            out[k] = x;
        }
        Ok(out)
    }

    pub fn reduces_to_zero(&self, s: &FormalSum) -> Result<bool> {
        Ok(self.reduce(s)?.iter().all(Zero::is_zero))
    }

    /// Dimension of the span of the generators' images.
    pub fn subspace_rank(&self, generators: &[FormalSum]) -> Result<usize> {
        let mut m = SparseMatrix::new(self.basis.len());
        for g in generators {
            m.push_row(self.reduce(g)?.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        linalg::rank(&m)
    }

    /// Number of relations that fail to reduce to zero (expected 0).
    pub fn relation_failures(&self) -> Result<usize> {
        let bad: Vec<bool> =
            self.relations.par_iter().map(|r| self.reduces_to_zero(r).map(|z| !z)).collect::<Result<Vec<_>>>()?;
        Ok(bad.into_iter().filter(|&b| b).count())
    }

    pub fn report(&self) -> SpaceReport {
        SpaceReport {
            degree: self.spec.degree,
            circles: self.spec.circles,
            relations_used: self.spec.selector.name().to_string(),
            connected_only: self.spec.connected_only,
            self_loops: self.spec.allow_self_loops,
            leg_profile: self.spec.leg_profile.clone(),
            classes: self.classes.len(),
            zero_classes: self.classes.iter().filter(|c| c.zero).count(),
            relations: self.relations.len(),
            rank: self.rank(),
            basis: self.basis_codes().iter().map(ToString::to_string).collect(),
        }
    }

    /// Header lines for the triplet export.
    pub fn triplet_header(&self) -> Vec<(String, String)> {
        let mut flags = Vec::new();
        if self.spec.connected_only {
            flags.push("connected");
        }
        if self.spec.allow_self_loops {
            flags.push("self-loops");
        }
        let mut h = vec![
            ("degree".to_string(), self.spec.degree.to_string()),
            ("circles".to_string(), self.spec.circles.to_string()),
            ("relations".to_string(), self.spec.selector.name().to_string()),
            ("flags".to_string(), if flags.is_empty() { "none".to_string() } else { flags.join(",") }),
        ];
        if let Some(p) = &self.spec.leg_profile {
            h.push(("legs".to_string(), p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
        }
        h
    }

    pub fn export_triplets(&self) -> String {
        linalg::write_triplets(&self.matrix, &self.triplet_header())
    }

    /// Invariant factors of the relation matrix (the space is then
    /// `Z^zeros ⊕ ⊕ Z/d`, counting columns without a factor).
    pub fn integral_factors(&self) -> Result<Vec<num_bigint::BigInt>> {
        linalg::integer_normal_form(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn degree_zero_has_rank_one() {
        let s = build_space(&SpaceSpec::closed(0)).unwrap();
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn connected_degree_one_and_two() {
        let s = build_space(&SpaceSpec::connected_closed(1)).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.reduce(&FormalSum::from_diagram(&theta())).unwrap().len(), 1);
        assert_ne!(s.reduce(&FormalSum::from_diagram(&theta())).unwrap()[0], q(0));
        let s2 = build_space(&SpaceSpec::connected_closed(2)).unwrap();
        assert_eq!(s2.rank(), 1);
    }

    #[test]
    fn degree_mismatch() {
        let s = build_space(&SpaceSpec::connected_closed(1)).unwrap();
        let r = s.reduce(&FormalSum::from_diagram(&k4()));
        assert_eq!(r, Err(Error::DegreeMismatch { expected: 1, found: 2 }));
    }

    #[test]
    fn disconnected_is_unknown_in_connected_space() {
        let s = build_space(&SpaceSpec::connected_closed(2)).unwrap();
        let r = s.reduce(&FormalSum::from_diagram(&theta().disjoint_union(&theta())));
        assert!(matches!(r, Err(Error::UnknownDiagram(_))));
    }

    #[test]
    fn with_loops_dumbbell_dies() {
        let s = build_space(&SpaceSpec::closed(1).self_loops(true)).unwrap();
        assert_eq!(s.classes().len(), 2);
        assert_eq!(s.rank(), 1);
        assert!(s.reduces_to_zero(&FormalSum::from_diagram(&dumbbell())).unwrap());
        // IHX at theta also kills the dumbbell integrally
        let f = s.integral_factors().unwrap();
        assert_eq!(f, vec![num_bigint::BigInt::from(1)]);
    }

    #[test]
    fn relations_reduce_to_zero() {
        for spec in [SpaceSpec::closed(3), SpaceSpec::on_circles(2, 1), SpaceSpec::on_circles(3, 2).connected(true)] {
            let s = build_space(&spec).unwrap();
            assert_eq!(s.relation_failures().unwrap(), 0);
        }
    }

    #[test]
    fn one_circle_degree_one_chord_equals_tripod() {
        // degree one on one circle: the chord survives, the bare circle next
        // to theta survives
        let s = build_space(&SpaceSpec::on_circles(1, 1)).unwrap();
        assert_eq!(s.rank(), 2);
        let c = build_space(&SpaceSpec::on_circles(1, 1).connected(true)).unwrap();
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn subspace_rank_bounds() {
        let s = build_space(&SpaceSpec::closed(3)).unwrap();
        assert_eq!(s.subspace_rank(&[]).unwrap(), 0);
        let basis: Vec<FormalSum> =
            s.basis().iter().map(|&i| FormalSum::from_diagram(&s.classes()[i].diagram)).collect();
        assert_eq!(s.subspace_rank(&basis).unwrap(), s.rank());
        let all: Vec<FormalSum> = s.classes().iter().map(|c| FormalSum::from_diagram(&c.diagram)).collect();
        assert_eq!(s.subspace_rank(&all).unwrap(), s.rank());
    }
}
