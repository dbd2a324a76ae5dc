//! Fixed-size square matrices over a [`Ring`], plus exact rank of a dense
//! rectangular matrix over a [`Field`].

use std::array;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring, ToJson};

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T, const N: usize> {
    pub rows: [[T; N]; N],
}

pub type Mat2<T> = Mat<T, 2>;
pub type Mat4<T> = Mat<T, 4>;

impl<T: Ring, const N: usize> Mat<T, N> {
    pub fn new(rows: [[T; N]; N]) -> Self {
        Mat { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat { rows: array::from_fn(|i| array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U, N> {
        Mat::from_fn(|i, j| f(&self.rows[i][j]))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|e| k.clone() * e.clone())
    }

    pub fn trace(&self) -> T {
        (0..N).fold(T::zero(), |acc, i| acc + self.rows[i][i].clone())
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        T: ToJson,
    {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

impl<T: Field, const N: usize> Mat<T, N> {
    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let mut a: Vec<Vec<T>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<T>> = Self::identity().rows.iter().map(|r| r.to_vec()).collect();
        for col in 0..N {
            let pivot = (col..N).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p_inv = a[col][col].checked_inv().ok_or(Error::Singular)?;
            for j in 0..N {
                a[col][j] = a[col][j].clone() * p_inv.clone();
                inv[col][j] = inv[col][j].clone() * p_inv.clone();
            }
            for r in 0..N {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..N {
                    a[r][j] = a[r][j].clone() - factor.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
                }
            }
        }
        Ok(Self::from_fn(|i, j| inv[i][j].clone()))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<T>> = self.rows.iter().map(|r| r.to_vec()).collect();
        rank(&rows)
    }
}

impl<T: Ring> Mat2<T> {
    pub fn det(&self) -> T {
        let [[a, b], [c, d]] = &self.rows;
        a.clone() * d.clone() - b.clone() * c.clone()
    }
}

/// Rank over the fraction field of a dense `m x n` matrix, by exact row
/// reduction. Ragged input is treated as zero-padded.
pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, T::zero());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let p_inv = a[rank][col].checked_inv().expect("nonzero pivot");
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() * p_inv.clone();
            for j in col..ncols {
                a[r][j] = a[r][j].clone() - factor.clone() * a[rank][j].clone();
            }
        }
        rank += 1;
    }
    rank
}

impl<T: Ring, const N: usize> Mul for &Mat<T, N> {
    type Output = Mat<T, N>;
    fn mul(self, rhs: Self) -> Mat<T, N> {
        Mat::from_fn(|i, j| {
            (0..N).fold(T::zero(), |acc, k| {
                if self.rows[i][k].is_zero() || rhs.rows[k][j].is_zero() {
                    acc
                } else {
                    acc + self.rows[i][k].clone() * rhs.rows[k][j].clone()
                }
            })
        })
    }
}

impl<T: Ring, const N: usize> Mul for Mat<T, N> {
    type Output = Mat<T, N>;
    fn mul(self, rhs: Self) -> Mat<T, N> {
        &self * &rhs
    }
}

impl<T: Ring, const N: usize> Add for Mat<T, N> {
    type Output = Mat<T, N>;
    fn add(self, rhs: Self) -> Mat<T, N> {
        Mat::from_fn(|i, j| self.rows[i][j].clone() + rhs.rows[i][j].clone())
    }
}

impl<T: Ring, const N: usize> Sub for Mat<T, N> {
    type Output = Mat<T, N>;
    fn sub(self, rhs: Self) -> Mat<T, N> {
        Mat::from_fn(|i, j| self.rows[i][j].clone() - rhs.rows[i][j].clone())
    }
}

impl<T: Ring, const N: usize> Neg for Mat<T, N> {
    type Output = Mat<T, N>;
    fn neg(self) -> Mat<T, N> {
        self.map(|e| -e.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};
    use proptest::prelude::*;

    fn m2(rows: [[i64; 2]; 2]) -> Mat2<Rational> {
        Mat::from_fn(|i, j| int(rows[i][j]))
    }

    #[test]
    fn identity_product() {
        let i2 = Mat2::<Rational>::identity();
        assert_eq!(&i2 * &i2, i2);
    }

    #[test]
    fn x_times_y() {
        let x = m2([[1, 0], [0, -1]]);
        let y = m2([[0, 1], [1, 0]]);
        assert_eq!(x * y, m2([[0, 1], [-1, 0]]));
    }

    #[test]
    fn unipotent_inverse() {
        assert_eq!(m2([[1, 1], [0, 1]]).inverse().unwrap(), m2([[1, -1], [0, 1]]));
        assert_eq!(Mat4::<Rational>::identity().inverse().unwrap(), Mat4::identity());
    }

    #[test]
    fn singular_inverse() {
        assert_eq!(m2([[1, 2], [2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn ranks() {
        assert_eq!(Mat4::<Rational>::zero().rank(), 0);
        assert_eq!(Mat4::<Rational>::identity().rank(), 4);
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), rat(1, 2)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn power() {
        let s = m2([[0, 1], [0, 0]]);
        assert!(s.pow(2).is_zero());
        let z = m2([[0, 1], [-1, 0]]);
        assert_eq!(z.pow(4), Mat2::identity());
    }

    fn arb_mat4() -> impl Strategy<Value = Mat4<Rational>> {
        proptest::collection::vec((-9i64..=9, 1i64..=5), 16)
            .prop_map(|v| Mat::from_fn(|i, j| rat(v[4 * i + j].0, v[4 * i + j].1)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn inverse_round_trip(a in arb_mat4()) {
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(&a * &inv, Mat4::identity());
                    prop_assert_eq!(a.rank(), 4);
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::Singular);
                    prop_assert!(a.rank() < 4);
                }
            }
        }
    }
}
