//! Bit-packed linear algebra over the two-element field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A vector in `F2^len`, packed 64 coordinates per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector whose coordinates are the low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len >= WORD { mask } else { mask & ((1u64 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "F2 vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn sum(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard bilinear form `sum_i x_i y_i`.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "F2 vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{self}]")
    }
}

impl FromStr for F2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Vector::from_bits(&bits))
    }
}

impl Serialize for F2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Incremental row echelon form. Each stored row has a distinct pivot and
/// no other stored row has a one in that pivot column.
///
/// A tracked echelon also records, for every stored row, which inserted
/// vectors were summed to produce it, so membership comes with a witness.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
    provenance: Option<Vec<F2Vector>>,
    capacity: usize,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            provenance: None,
            capacity: 0,
            inserted: 0,
        }
    }

    /// An echelon that can [`express`](Self::express) vectors in terms of
    /// the inserted ones. `capacity` is a size hint for the number of inserts.
    pub fn tracked(dim: usize, capacity: usize) -> Self {
        Echelon {
            provenance: Some(Vec::new()),
            capacity: capacity.max(1),
            ..Echelon::new(dim)
        }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a F2Vector>) -> Self {
        let mut e = Echelon::new(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    /// Reduce `v` against the stored rows; the result has zeros at every pivot.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.add_assign(row);
            }
        }
        out
    }

    fn reduce_tracked(&self, v: &F2Vector, prov: &[F2Vector]) -> (F2Vector, F2Vector) {
        let mut out = v.clone();
        let mut combo = F2Vector::zeros(self.capacity);
        for ((row, &p), pr) in self.rows.iter().zip(&self.pivots).zip(prov) {
            if out.get(p) {
                out.add_assign(row);
                combo.add_assign(pr);
            }
        }
        (out, combo)
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    fn grow(&mut self) {
        let new_cap = self.capacity * 2;
        if let Some(prov) = self.provenance.as_mut() {
            for p in prov.iter_mut() {
                let mut g = F2Vector::zeros(new_cap);
                for i in p.ones() {
                    g.set(i, true);
                }
                *p = g;
            }
        }
        self.capacity = new_cap;
    }

    /// Insert a vector; returns true if it increased the rank.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.dim, "echelon dimension mismatch");
        let index = self.inserted;
        self.inserted += 1;
        let Some(prov) = self.provenance.take() else {
            return self.insert_reduced(self.reduce(v), None);
        };
        if index >= self.capacity {
            self.provenance = Some(prov);
            self.grow();
            let prov = self.provenance.take().unwrap();
            return self.finish_tracked_insert(v, index, prov);
        }
        self.finish_tracked_insert(v, index, prov)
    }

    fn finish_tracked_insert(&mut self, v: &F2Vector, index: usize, prov: Vec<F2Vector>) -> bool {
        let (reduced, mut combo) = self.reduce_tracked(v, &prov);
        combo.flip(index);
        self.provenance = Some(prov);
        self.insert_reduced(reduced, Some(combo))
    }

    fn insert_reduced(&mut self, reduced: F2Vector, combo: Option<F2Vector>) -> bool {
        let Some(p) = reduced.first_one() else {
            return false;
        };
        for (k, row) in self.rows.iter_mut().enumerate() {
            if row.get(p) {
                row.add_assign(&reduced);
                if let (Some(prov), Some(c)) = (self.provenance.as_mut(), combo.as_ref()) {
                    prov[k].add_assign(c);
                }
            }
        }
        self.rows.push(reduced);
        self.pivots.push(p);
        if let (Some(prov), Some(c)) = (self.provenance.as_mut(), combo) {
            prov.push(c);
        }
        true
    }

    /// Express `v` as a sum of inserted vectors (indexed by insertion order),
    /// if it lies in their span. Requires a [`tracked`](Self::tracked) echelon.
    pub fn express(&self, v: &F2Vector) -> Option<F2Vector> {
        let prov = self.provenance.as_ref().expect("express requires a tracked echelon");
        let (reduced, combo) = self.reduce_tracked(v, prov);
        if !reduced.is_zero() {
            return None;
        }
        let mut out = F2Vector::zeros(self.inserted);
        for i in combo.ones() {
            out.set(i, true);
        }
        Some(out)
    }

    /// Coordinates that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Dense matrix over F2 stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn new(cols: usize, rows: Vec<F2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        F2Matrix { cols, rows }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix::new(n, (0..n).map(|i| F2Vector::unit(n, i)).collect())
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn rank(&self) -> usize {
        Echelon::from_vectors(self.cols, &self.rows).rank()
    }

    pub fn mul_vec(&self, x: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = vec![F2Vector::zeros(self.rows.len()); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t[j].set(i, true);
            }
        }
        F2Matrix::new(self.rows.len(), t)
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &F2Vector) -> Option<F2Vector> {
        assert_eq!(b.len(), self.rows.len());
        // augment each row with its right-hand side in the last column
        let aug: Vec<F2Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = F2Vector::zeros(self.cols + 1);
                for j in r.ones() {
                    a.set(j, true);
                }
                a.set(self.cols, b.get(i));
                a
            })
            .collect();
        let ech = Echelon::from_vectors(self.cols + 1, &aug);
        let mut x = F2Vector::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if p == self.cols {
                return None;
            }
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        let ech = Echelon::from_vectors(self.cols, &self.rows);
        let free = ech.free_columns();
        free.iter()
            .map(|&f| {
                let mut x = F2Vector::unit(self.cols, f);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> F2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn bit_string_round_trip() {
        let x = v("1011001");
        assert_eq!(x.to_string(), "1011001");
        assert_eq!(x.count_ones(), 4);
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 2, 3, 6]);
        assert!("10a".parse::<F2Vector>().is_err());
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut x = F2Vector::zeros(130);
        x.set(0, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(x.dot(&F2Vector::unit(130, 129)));
        assert_eq!(x.first_one(), Some(0));
    }

    #[test]
    fn rank_plus_nullity_is_columns() {
        let m = F2Matrix::new(4, vec![v("1100"), v("0110"), v("1010")]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(m.mul_vec(x).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = F2Matrix::new(3, vec![v("110"), v("011")]);
        let x = m.solve(&v("11")).unwrap();
        assert_eq!(m.mul_vec(&x), v("11"));
        let bad = F2Matrix::new(2, vec![v("11"), v("11")]);
        assert!(bad.solve(&v("10")).is_none());
    }

    #[test]
    fn express_recovers_combination() {
        let gens = [v("1100"), v("0110"), v("0011")];
        let mut e = Echelon::tracked(4, 1);
        for g in &gens {
            e.insert(g);
        }
        let target = v("1001");
        let combo = e.express(&target).unwrap();
        let mut acc = F2Vector::zeros(4);
        for i in combo.ones() {
            acc.add_assign(&gens[i]);
        }
        assert_eq!(acc, target);
        assert!(e.express(&v("1000")).is_none());
    }

    #[test]
    fn reduction_is_idempotent() {
        let e = Echelon::from_vectors(5, &[v("10110"), v("01011")]);
        let r = e.reduce(&v("11111"));
        assert_eq!(e.reduce(&r), r);
    }
}
