//! Relations with values in a quantale, composition, and distributors.
//!
//! A relation `r: X ⇸ Y` is stored as an `|X| x |Y|` matrix. Composition
//! follows diagrammatic argument order in the matrix but is written `s · r`:
//! `(s · r)(x,z) = max_y r(x,y) ⊗ s(y,z)`.

use thiserror::Error;

use crate::quantale::Quantale;
use crate::value::Value;
use crate::vcat::{Matrix, VCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("cannot compose {0}x{1} after {2}x{3}")]
    Mismatch(usize, usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VRelation {
    matrix: Matrix,
}

impl VRelation {
    pub fn new(matrix: Matrix) -> VRelation {
        VRelation { matrix }
    }

    pub fn from_fn(src: usize, dst: usize, f: impl FnMut(usize, usize) -> Value) -> VRelation {
        VRelation::new(Matrix::from_fn(src, dst, f))
    }

    /// The identity distributor of `x`, which is its structure.
    pub fn identity(x: &VCategory) -> VRelation {
        VRelation::new(x.matrix().clone())
    }

    pub fn src(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dst(&self) -> usize {
        self.matrix.cols()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Value {
        self.matrix.get(x, y)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn leq(&self, other: &VRelation) -> bool {
        self.matrix.leq(&other.matrix)
    }
}

/// `s · r`, where `r: X ⇸ Y` and `s: Y ⇸ Z`. An empty middle yields `0`.
pub fn compose(q: &Quantale, s: &VRelation, r: &VRelation) -> Result<VRelation, RelationError> {
    if r.dst() != s.src() {
        return Err(RelationError::Mismatch(s.src(), s.dst(), r.src(), r.dst()));
    }
    Ok(VRelation::from_fn(r.src(), s.dst(), |x, z| {
        (0..r.dst())
            .map(|y| q.tensor(r.get(x, y), s.get(y, z)))
            .max()
            .unwrap_or(Value::ZERO)
    }))
}

/// `r · a <= r` and `b · r <= r` for `r: X ⇸ Y`.
pub fn is_distributor(r: &VRelation, x: &VCategory, y: &VCategory) -> bool {
    if r.src() != x.size() || r.dst() != y.size() {
        return false;
    }
    let q = x.quantale();
    let left = compose(q, r, &VRelation::identity(x)).expect("shapes checked");
    let right = compose(q, &VRelation::identity(y), r).expect("shapes checked");
    left.leq(r) && right.leq(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjointFailure {
    #[error("unit fails at ({0}, {1})")]
    Unit(usize, usize),
    #[error("counit fails at ({0}, {1})")]
    Counit(usize, usize),
    #[error("shape mismatch")]
    Shape,
}

/// Checks `left ⊣ right` for `left: X ⇸ Y` and `right: Y ⇸ X`:
/// `a_X <= right · left` and `left · right <= a_Y`.
pub fn check_adjoint(
    left: &VRelation,
    right: &VRelation,
    x: &VCategory,
    y: &VCategory,
) -> Result<(), AdjointFailure> {
    let q = x.quantale();
    let unit = compose(q, right, left).map_err(|_| AdjointFailure::Shape)?;
    let counit = compose(q, left, right).map_err(|_| AdjointFailure::Shape)?;
    if unit.src() != x.size() || counit.src() != y.size() {
        return Err(AdjointFailure::Shape);
    }
    for i in 0..x.size() {
        for j in 0..x.size() {
            if x.a(i, j) > unit.get(i, j) {
                return Err(AdjointFailure::Unit(i, j));
            }
        }
    }
    for i in 0..y.size() {
        for j in 0..y.size() {
            if counit.get(i, j) > y.a(i, j) {
                return Err(AdjointFailure::Counit(i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn composition_and_empty_middle() {
        let q = Quantale::lukasiewicz();
        let r = VRelation::new(Matrix::from_rows(vec![vec![v("1/2"), v("1")]]).unwrap());
        let s = VRelation::new(Matrix::from_rows(vec![vec![v("1")], vec![v("1/2")]]).unwrap());
        assert_eq!(compose(&q, &s, &r).unwrap().get(0, 0), v("1/2"));
        let r = VRelation::new(Matrix::from_rows(vec![vec![v("1/2"), v("1/4")]]).unwrap());
        let s = VRelation::new(Matrix::from_rows(vec![vec![v("3/4")], vec![v("1")]]).unwrap());
        assert_eq!(compose(&q, &s, &r).unwrap().get(0, 0), v("1/4"));
        let empty_r = VRelation::from_fn(2, 0, |_, _| Value::ONE);
        let empty_s = VRelation::from_fn(0, 3, |_, _| Value::ONE);
        let c = compose(&q, &empty_s, &empty_r).unwrap();
        assert!((0..2).all(|i| (0..3).all(|j| c.get(i, j).is_zero())));
        assert!(compose(&q, &r, &r).is_err());
    }

    #[test]
    fn poset_distributors_are_lower_upper() {
        let q = Quantale::lukasiewicz();
        let x = VCategory::from_poset(q.clone(), &FinPoset::chain(2));
        let y = VCategory::from_poset(q.clone(), &FinPoset::chain(1));
        let rel = |a: &str, b: &str| VRelation::new(Matrix::from_rows(vec![vec![v(a)], vec![v(b)]]).unwrap());
        assert!(is_distributor(&rel("1", "0"), &x, &y));
        assert!(!is_distributor(&rel("0", "1"), &x, &y));
        assert!(is_distributor(&VRelation::identity(&x), &x, &x));
    }

    #[test]
    fn representable_adjunction() {
        let q = Quantale::lukasiewicz();
        let m = Matrix::from_rows(vec![vec![v("1"), v("1/2")], vec![v("0"), v("1")]]).unwrap();
        let a = VCategory::new(q.clone(), m).unwrap();
        let g = VCategory::unit(q);
        for x0 in 0..2 {
            let left = VRelation::from_fn(1, 2, |_, z| a.a(x0, z));
            let right = VRelation::from_fn(2, 1, |z, _| a.a(z, x0));
            assert_eq!(check_adjoint(&left, &right, &g, &a), Ok(()));
        }
        let left = VRelation::from_fn(1, 2, |_, _| Value::ZERO);
        let right = VRelation::from_fn(2, 1, |_, _| Value::ONE);
        assert_eq!(check_adjoint(&left, &right, &g, &a), Err(AdjointFailure::Unit(0, 0)));
    }
}
