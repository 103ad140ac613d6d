//! Finite categories enriched in a quantale on `[0,1]`.

use std::fmt;

use thiserror::Error;

use crate::poset::{FinPoset, PosetError};
use crate::quantale::Quantale;
use crate::value::{GridChain, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("expected a {rows}x{cols} matrix, found {found} entries")]
    Size { rows: usize, cols: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("structure matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} labels for {1} objects")]
    Labels(usize, usize),
}

/// A dense `rows x cols` matrix of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Value>) -> Result<Matrix, ShapeError> {
        if data.len() != rows * cols {
            return Err(ShapeError::Size {
                rows,
                cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Value>>) -> Result<Matrix, ShapeError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(ShapeError::Ragged {
                    row: i,
                    found: row.len(),
                    expected: c,
                });
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Value) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: Value) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Value {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Value] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise `<=`; `false` on a shape mismatch.
    pub fn leq(&self, other: &Matrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn is_crisp(&self) -> bool {
        self.data.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn to_rows(&self) -> Vec<Vec<Value>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("a({x},{x}) = {value}, expected 1")]
    Reflexivity { x: usize, value: Value },
    #[error("a({x},{y}) ⊗ a({y},{z}) = {lhs} exceeds a({x},{z}) = {rhs}")]
    Transitivity {
        x: usize,
        y: usize,
        z: usize,
        lhs: Value,
        rhs: Value,
    },
}

/// A set of objects with hom-values `a(x,y)` in a quantale.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VCategory {
    quantale: Quantale,
    hom: Matrix,
    labels: Vec<String>,
}

impl VCategory {
    /// Wraps a square matrix; the axioms are checked by [`VCategory::validate`].
    pub fn new(quantale: Quantale, hom: Matrix) -> Result<VCategory, ShapeError> {
        if hom.rows != hom.cols {
            return Err(ShapeError::NotSquare {
                rows: hom.rows,
                cols: hom.cols,
            });
        }
        let labels = (0..hom.rows).map(|i| i.to_string()).collect();
        Ok(VCategory {
            quantale,
            hom,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<VCategory, ShapeError> {
        if labels.len() != self.size() {
            return Err(ShapeError::Labels(labels.len(), self.size()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// The single-object category with `a(∗,∗) = 1`.
    pub fn unit(quantale: Quantale) -> VCategory {
        VCategory::new(quantale, Matrix::filled(1, 1, Value::ONE)).expect("square")
    }

    /// A poset viewed as a two-valued category.
    pub fn from_poset(quantale: Quantale, p: &FinPoset) -> VCategory {
        let hom = Matrix::from_fn(p.size(), p.size(), |x, y| {
            if p.leq(x, y) {
                Value::ONE
            } else {
                Value::ZERO
            }
        });
        VCategory::new(quantale, hom).expect("square")
    }

    /// The grid `Q_n` with its internal hom as structure.
    pub fn grid_chain(quantale: Quantale, n: u32) -> VCategory {
        let values: Vec<Value> = GridChain::new(n).values().collect();
        let hom = Matrix::from_fn(values.len(), values.len(), |i, j| {
            quantale.hom(values[i], values[j])
        });
        let labels = values.iter().map(Value::to_string).collect();
        VCategory {
            quantale,
            hom,
            labels,
        }
    }

    /// Functions `S -> Q_n` on a discrete `S` with
    /// `[h,l] = min_s hom(h(s), l(s))`.
    pub fn power_space(quantale: Quantale, set_size: usize, n: u32) -> (VCategory, Vec<Vec<Value>>) {
        let grid: Vec<Value> = GridChain::new(n).values().collect();
        let mut funcs: Vec<Vec<Value>> = vec![Vec::new()];
        for _ in 0..set_size {
            funcs = funcs
                .into_iter()
                .flat_map(|f| {
                    grid.iter().map(move |&v| {
                        let mut g = f.clone();
                        g.push(v);
                        g
                    })
                })
                .collect();
        }
        let hom = Matrix::from_fn(funcs.len(), funcs.len(), |i, j| {
            funcs[i]
                .iter()
                .zip(&funcs[j])
                .map(|(&h, &l)| quantale.hom(h, l))
                .min()
                .unwrap_or(Value::ONE)
        });
        let labels = funcs
            .iter()
            .map(|f| {
                let parts: Vec<String> = f.iter().map(Value::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let cat = VCategory {
            quantale,
            hom,
            labels,
        };
        (cat, funcs)
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    pub fn size(&self) -> usize {
        self.hom.rows
    }

    #[inline]
    pub fn a(&self, x: usize, y: usize) -> Value {
        self.hom.get(x, y)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.hom
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn validate(&self) -> Result<(), CategoryViolation> {
        let n = self.size();
        for x in 0..n {
            let value = self.a(x, x);
            if !value.is_one() {
                return Err(CategoryViolation::Reflexivity { x, value });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.quantale.tensor(self.a(x, y), self.a(y, z));
                    let rhs = self.a(x, z);
                    if lhs > rhs {
                        return Err(CategoryViolation::Transitivity { x, y, z, lhs, rhs });
                    }
                }
            }
        }
        Ok(())
    }

    /// `x <= y` iff `a(x,y) = 1`.
    pub fn natural_order(&self) -> Vec<Vec<bool>> {
        (0..self.size())
            .map(|x| (0..self.size()).map(|y| self.a(x, y).is_one()).collect())
            .collect()
    }

    pub fn is_separated(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.a(x, y).is_one() && self.a(y, x).is_one())))
    }

    /// The natural order as a poset, if it is antisymmetric.
    pub fn natural_poset(&self) -> Result<FinPoset, PosetError> {
        FinPoset::from_leq(&self.natural_order())
    }

    /// Whether every hom-value is `0` or `1`.
    pub fn is_crisp(&self) -> bool {
        self.hom.is_crisp()
    }

    pub fn dual(&self) -> VCategory {
        VCategory {
            quantale: self.quantale.clone(),
            hom: self.hom.transpose(),
            labels: self.labels.clone(),
        }
    }

    /// `a(x,y) <= b(f(x), f(y))` for all `x, y`.
    pub fn is_vfunctor(&self, f: &[usize], target: &VCategory) -> bool {
        let n = self.size();
        f.len() == n
            && f.iter().all(|&fx| fx < target.size())
            && (0..n).all(|x| (0..n).all(|y| self.a(x, y) <= target.a(f[x], f[y])))
    }
}

impl fmt::Display for VCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.size() {
            let row: Vec<String> = self.hom.row(x).iter().map(Value::to_string).collect();
            writeln!(f, "{}: [{}]", self.labels[x], row.join(", "))?;
        }
        Ok(())
    }
}

/// Every `V`-category structure on `size` objects with values in `Q_n`.
pub fn all_grid_categories(quantale: &Quantale, n: u32, size: usize) -> Vec<VCategory> {
    let grid: Vec<Value> = GridChain::new(n).values().collect();
    let off: Vec<(usize, usize)> = (0..size)
        .flat_map(|x| (0..size).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut digits = vec![0usize; off.len()];
    let mut out = Vec::new();
    loop {
        let mut m = Matrix::filled(size, size, Value::ONE);
        for (&(x, y), &d) in off.iter().zip(&digits) {
            m.set(x, y, grid[d]);
        }
        let cat = VCategory::new(quantale.clone(), m).expect("square");
        if cat.validate().is_ok() {
            out.push(cat);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < grid.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    fn luk() -> Quantale {
        Quantale::lukasiewicz()
    }

    #[test]
    fn two_point_example() {
        let m = Matrix::from_rows(vec![vec![v("1"), v("1/2")], vec![v("0"), v("1")]]).unwrap();
        let c = VCategory::new(luk(), m).unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert!(c.is_separated());
        assert_eq!(c.natural_order(), vec![vec![true, false], vec![false, true]]);
    }

    #[test]
    fn broken_reflexivity_reported() {
        let m = Matrix::from_rows(vec![vec![v("1"), v("0")], vec![v("0"), v("1/2")]]).unwrap();
        let c = VCategory::new(luk(), m).unwrap();
        assert_eq!(
            c.validate(),
            Err(CategoryViolation::Reflexivity { x: 1, value: v("1/2") })
        );
    }

    #[test]
    fn broken_transitivity_reported() {
        let m = Matrix::from_rows(vec![
            vec![v("1"), v("1"), v("0")],
            vec![v("0"), v("1"), v("1")],
            vec![v("0"), v("0"), v("1")],
        ])
        .unwrap();
        let c = VCategory::new(Quantale::minimum(), m).unwrap();
        assert!(matches!(
            c.validate(),
            Err(CategoryViolation::Transitivity { x: 0, y: 1, z: 2, .. })
        ));
    }

    #[test]
    fn grid_chain_order_is_the_usual_one() {
        let c = VCategory::grid_chain(luk(), 3);
        assert!(c.validate().is_ok());
        let ord = c.natural_order();
        for (i, row) in ord.iter().enumerate() {
            for (j, &le) in row.iter().enumerate() {
                assert_eq!(le, i <= j);
            }
        }
    }

    #[test]
    fn power_space_is_a_category() {
        let (c, funcs) = VCategory::power_space(luk(), 2, 2);
        assert_eq!(funcs.len(), 9);
        assert!(c.validate().is_ok());
        assert!(c.is_separated());
    }

    #[test]
    fn dual_and_functor() {
        let p = FinPoset::chain(2);
        let c = VCategory::from_poset(luk(), &p);
        assert_eq!(c.dual().a(1, 0), Value::ONE);
        assert!(c.is_vfunctor(&[0, 1], &c));
        assert!(!c.is_vfunctor(&[1, 0], &c));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            Matrix::from_rows(vec![vec![v("1")], vec![v("1"), v("0")]]),
            Err(ShapeError::Ragged { row: 1, .. })
        ));
        let m = Matrix::filled(2, 3, Value::ONE);
        assert!(matches!(VCategory::new(luk(), m), Err(ShapeError::NotSquare { .. })));
    }

    #[test]
    fn grid_category_counts() {
        assert_eq!(all_grid_categories(&luk(), 1, 3).len(), 29);
        let sep = all_grid_categories(&luk(), 1, 3)
            .into_iter()
            .filter(VCategory::is_separated)
            .count();
        assert_eq!(sep, 19);
    }
}
