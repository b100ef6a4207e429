//! Free-group words, the truncated Magnus expansion, and small permutation
//! groups with their lower central series.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::covering::Monodromy;
use crate::error::{Error, Result};
use crate::surface::{Dart, Surface};

/// A free-group word. Letter `i + 1` is generator `i`, `-(i + 1)` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Word {
        Word(vec![i as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Largest generator index used, plus one.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Parse letters `a`..`z` as generators and `A`..`Z` (or `a^-1`) as inverses.
    /// Spaces, `*` and `.` are ignored; `1` alone is the identity.
    pub fn parse(text: &str) -> Result<Word> {
        if text.trim() == "1" {
            return Ok(Word::identity());
        }
        let mut out = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let letter = match c {
                ' ' | '*' | '.' => continue,
                'a'..='z' => (c as i32 - 'a' as i32) + 1,
                'A'..='Z' => -((c as i32 - 'A' as i32) + 1),
                _ => return Err(Error::Parse(format!("unexpected character {c:?} at offset {}", i - 1))),
            };
            if chars[i..].starts_with(&['^', '-', '1']) {
                i += 3;
                out.push(-letter);
            } else {
                out.push(letter);
            }
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.0 {
            let base = if x > 0 { b'a' } else { b'A' };
            let i = x.unsigned_abs() as u8 - 1;
            if i < 26 {
                write!(f, "{}", (base + i) as char)?;
            } else {
                write!(f, "[{x}]")?;
            }
        }
        Ok(())
    }
}

/// Iterated left-normed commutator `[...[[x_0, x_1], x_2], ..., x_{m-1}]`.
pub fn left_normed(gens: &[usize]) -> Word {
    let mut w = Word::generator(gens[0]);
    for &g in &gens[1..] {
        w = Word::commutator(&w, &Word::generator(g));
    }
    w
}

/// Noncommutative power series in `rank` variables with integer
/// coefficients, truncated above degree `depth`.
///
/// Coefficients are stored densely: monomials of length `l` occupy a block
/// starting at `offset(l)`, ordered as base-`rank` numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: usize,
    depth: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    fn offset(rank: usize, len: usize) -> usize {
        (0..len).map(|l| rank.pow(l as u32)).sum()
    }

    fn size(rank: usize, depth: usize) -> usize {
        Self::offset(rank, depth + 1)
    }

    pub fn zero(rank: usize, depth: usize) -> TruncatedSeries {
        TruncatedSeries {
            rank,
            depth,
            coeffs: vec![BigInt::zero(); Self::size(rank, depth)],
        }
    }

    pub fn one(rank: usize, depth: usize) -> TruncatedSeries {
        let mut s = Self::zero(rank, depth);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn index(&self, monomial: &[usize]) -> usize {
        let mut n = 0;
        for &x in monomial {
            n = n * self.rank + x;
        }
        Self::offset(self.rank, monomial.len()) + n
    }

    fn monomial(&self, mut idx: usize) -> Vec<usize> {
        let mut len = 0;
        while idx >= self.rank.pow(len as u32) {
            idx -= self.rank.pow(len as u32);
            len += 1;
        }
        let mut m = vec![0; len];
        for slot in m.iter_mut().rev() {
            *slot = idx % self.rank;
            idx /= self.rank;
        }
        m
    }

    pub fn coefficient(&self, monomial: &[usize]) -> BigInt {
        if monomial.len() > self.depth || monomial.iter().any(|&x| x >= self.rank) {
            return BigInt::zero();
        }
        self.coeffs[self.index(monomial)].clone()
    }

    /// Right multiplication by `1 + X_i` (or its inverse `1 - X_i + X_i^2 - ...`).
    fn mul_letter(&self, i: usize, inverse: bool) -> TruncatedSeries {
        let mut out = self.clone();
        let r = self.rank;
        // process long monomials first so each term is multiplied by the
        // original coefficients only
        for len in (0..self.depth).rev() {
            let start = Self::offset(r, len);
            for n in 0..r.pow(len as u32) {
                let c = &self.coeffs[start + n];
                if c.is_zero() {
                    continue;
                }
                // monomial * X_i^j for j >= 1
                let mut idx_n = n;
                let mut sign_neg = inverse;
                for l in len + 1..=self.depth {
                    idx_n = idx_n * r + i;
                    let idx = Self::offset(r, l) + idx_n;
                    if sign_neg {
                        out.coeffs[idx] -= c;
                    } else {
                        out.coeffs[idx] += c;
                    }
                    if !inverse {
                        break;
                    }
                    sign_neg = !sign_neg;
                }
            }
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!((self.rank, self.depth), (other.rank, other.depth));
        let mut out = Self::zero(self.rank, self.depth);
        let r = self.rank;
        for (a, ca) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ma = self.monomial(a);
            for len_b in 0..=self.depth - ma.len() {
                let start = Self::offset(r, len_b);
                let block = r.pow(len_b as u32);
                let la = ma.len();
                let base_a = a - Self::offset(r, la);
                for n in 0..block {
                    let cb = &other.coeffs[start + n];
                    if cb.is_zero() {
                        continue;
                    }
                    let idx = Self::offset(r, la + len_b) + base_a * block + n;
                    out.coeffs[idx] += ca * cb;
                }
            }
        }
        out
    }

    /// Lowest degree >= 1 with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        (1..=self.depth).find(|&l| {
            let start = Self::offset(self.rank, l);
            self.coeffs[start..start + self.rank.pow(l as u32)]
                .iter()
                .any(|c| !c.is_zero())
        })
    }

    /// Nonzero terms as (monomial, coefficient), shortest first.
    pub fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.monomial(i), c.clone()))
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let mono: String = m.iter().map(|x| format!("X{}", x + 1)).collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Magnus expansion `x_i -> 1 + X_i` of a word, truncated above `depth`.
pub fn magnus(word: &Word, rank: usize, depth: usize) -> Result<TruncatedSeries> {
    if word.rank() > rank {
        return Err(Error::Precondition(format!(
            "word uses {} generators but the rank is {rank}",
            word.rank()
        )));
    }
    if rank == 0 || depth == 0 {
        return Err(Error::Precondition("rank and depth must be positive".into()));
    }
    let mut s = TruncatedSeries::one(rank, depth);
    for &x in word.reduced().letters() {
        s = s.mul_letter(x.unsigned_abs() as usize - 1, x < 0);
    }
    Ok(s)
}

/// Depth of a word in the lower central series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LcsDepth {
    /// In `gamma_d` but not `gamma_{d+1}`.
    Exact(usize),
    /// No term below the truncation degree survives: the word lies in
    /// `gamma_{n}` for the given n, and possibly deeper.
    AtLeast(usize),
}

impl LcsDepth {
    /// A depth the word certainly reaches.
    pub fn lower(self) -> usize {
        match self {
            LcsDepth::Exact(d) | LcsDepth::AtLeast(d) => d,
        }
    }
}

impl fmt::Display for LcsDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsDepth::Exact(d) => write!(f, "{d}"),
            LcsDepth::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

pub fn lcs_degree(word: &Word, rank: usize, depth: usize) -> Result<LcsDepth> {
    if word.reduced().is_empty() {
        return Err(Error::Precondition(
            "trivial word lies in every term of the lower central series".into(),
        ));
    }
    let s = magnus(word, rank, depth)?;
    Ok(match s.lowest_degree() {
        Some(d) => LcsDepth::Exact(d),
        None => LcsDepth::AtLeast(depth + 1),
    })
}

/// A free basis of the fundamental group of a surface with boundary.
///
/// Edges outside a spanning tree and outside a dual spanning tree of the
/// filled faces (rooted at the boundary) are the generators; every other
/// edge is rewritten through the face relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasis {
    pub rank: usize,
    pub root: usize,
    pub generator_edges: Vec<usize>,
    /// Word of the forward dart of each edge.
    pub edge_words: Vec<Word>,
}

impl FreeBasis {
    pub fn dart_word(&self, d: Dart) -> Word {
        let w = &self.edge_words[d.edge()];
        if d.is_reversed() {
            w.inverse()
        } else {
            w.clone()
        }
    }

    /// The element represented by a closed walk, up to conjugacy when the
    /// walk is not based at the root.
    pub fn word_of(&self, darts: &[Dart]) -> Word {
        let mut v = Vec::new();
        for &d in darts {
            v.extend_from_slice(self.dart_word(d).letters());
        }
        Word(v).reduced()
    }
}

pub fn free_basis(s: &Surface) -> Result<FreeBasis> {
    if s.is_closed() {
        return Err(Error::Precondition(
            "the surface is closed, its fundamental group is not free".into(),
        ));
    }
    let root = 0;
    let parent = s.bfs_tree(root);
    let mut in_tree = vec![false; s.num_edges()];
    for d in parent.iter().flatten() {
        in_tree[d.edge()] = true;
    }
    // dual search from all boundary faces at once
    let mut face_parent: Vec<Option<Dart>> = vec![None; s.num_faces()];
    let mut seen: Vec<bool> = (0..s.num_faces()).map(|f| s.is_boundary_face(f)).collect();
    let mut queue: VecDeque<usize> = (0..s.num_faces()).filter(|&f| seen[f]).collect();
    let mut in_cotree = vec![false; s.num_edges()];
    let mut order = Vec::new();
    while let Some(f) = queue.pop_front() {
        for &d in s.face(f) {
            let g = s.face_of(d.partner());
            if in_tree[d.edge()] || seen[g] {
                continue;
            }
            seen[g] = true;
            in_cotree[d.edge()] = true;
            face_parent[g] = Some(d.partner());
            order.push(g);
            queue.push_back(g);
        }
    }
    if seen.iter().any(|x| !x) {
        return Err(Error::InvalidSurface("dual graph is disconnected".into()));
    }
    let generator_edges: Vec<usize> = (0..s.num_edges()).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    let mut edge_words = vec![Word::identity(); s.num_edges()];
    for (i, &e) in generator_edges.iter().enumerate() {
        edge_words[e] = Word::generator(i);
    }
    let mut basis = FreeBasis {
        rank: generator_edges.len(),
        root,
        generator_edges,
        edge_words,
    };
    for &g in order.iter().rev() {
        let pd = face_parent[g].unwrap();
        let walk = s.face(g);
        let j = walk.iter().position(|&d| d == pd).unwrap();
        let rest: Vec<Dart> = (1..walk.len()).map(|t| walk[(j + t) % walk.len()]).collect();
        let w = basis.word_of(&rest).inverse();
        basis.edge_words[pd.edge()] = if pd.is_reversed() { w.inverse() } else { w };
    }
    let expected = 1 - s.euler_characteristic();
    if basis.rank as i64 != expected {
        return Err(Error::InvalidSurface(format!(
            "free basis has rank {}, expected {expected}",
            basis.rank
        )));
    }
    Ok(basis)
}

/// A permutation of `0..n` as its image list.
pub type Perm = Vec<u32>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `(p * q)(x) = q(p(x))`: apply `p` first.
pub fn perm_mul(p: &[u32], q: &[u32]) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn perm_inverse(p: &[u32]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn perm_commutator(p: &[u32], q: &[u32]) -> Perm {
    perm_mul(&perm_mul(&perm_mul(p, q), &perm_inverse(p)), &perm_inverse(q))
}

/// A permutation group with its elements listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen: Vec<u32> = self.elements.iter().map(|g| g[x as usize]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }
}

/// Closure of the generators under products, breadth first.
pub fn group_closure(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    let id = perm_identity(degree);
    let gens: Vec<Perm> = gens.iter().filter(|g| **g != id).cloned().collect();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let p = perm_mul(&elements[i], g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        needed: elements.len() as u64 + 1,
                        cap: cap as u64,
                    });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    Ok(PermGroup {
        degree,
        generators: gens,
        elements,
        index,
    })
}

/// `[G, H]` for a subgroup `H` normal in `G`.
pub fn commutator_subgroup(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = Vec::new();
    for x in &g.generators {
        for y in &h.generators {
            gens.push(perm_commutator(x, y));
        }
    }
    normal_closure(g, gens, cap)
}

/// Smallest subgroup containing `gens` and normalized by `g`.
pub fn normal_closure(g: &PermGroup, mut gens: Vec<Perm>, cap: usize) -> Result<PermGroup> {
    loop {
        let sub = group_closure(g.degree, &gens, cap)?;
        let mut added = false;
        for x in &g.generators {
            let xi = perm_inverse(x);
            for y in sub.generators.clone() {
                let c = perm_mul(&perm_mul(&xi, &y), x);
                if !sub.contains(&c) {
                    gens.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(sub);
        }
    }
}

/// `gamma_1 = G, gamma_{i+1} = [G, gamma_i]`, until it stabilizes.
pub fn lower_central_series(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return Ok(series);
        }
        let next = commutator_subgroup(g, last, cap)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Nilpotency class, or `None` when the series stalls above the identity.
pub fn nilpotency_class(g: &PermGroup, cap: usize) -> Result<Option<usize>> {
    let series = lower_central_series(g, cap)?;
    Ok(series.last().unwrap().is_trivial().then(|| series.len() - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    pub k: usize,
    /// `log2` of the order of the monodromy image, when enumerated.
    pub ell: Option<usize>,
    pub ell_bound: u64,
    pub class: Option<usize>,
    pub series_orders: Vec<usize>,
    pub transitive: Option<bool>,
    pub checks: Vec<(String, bool)>,
    pub note: Option<String>,
}

impl CoreReport {
    pub fn all_checks(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Order, lower central series and class of the monodromy image of a height-k
/// tower. The kernel of the fiber action is normal of index `2^ell`.
pub fn normal_core_report(m: &Monodromy, k: usize, cap: usize) -> CoreReport {
    let ell_bound = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut report = CoreReport {
        k,
        ell: None,
        ell_bound,
        class: None,
        series_orders: Vec::new(),
        transitive: None,
        checks: Vec::new(),
        note: None,
    };
    let perms: Vec<Perm> = m
        .permutations
        .iter()
        .map(|p| p.iter().map(|&x| x as u32).collect())
        .collect();
    let g = match group_closure(m.degree, &perms, cap) {
        Ok(g) => g,
        Err(e) => {
            report.note = Some(format!("{e}; only the bound ell <= 2^k - 1 = {ell_bound} applies"));
            return report;
        }
    };
    let order = g.order();
    let pow2 = order.is_power_of_two();
    report.checks.push(("order is a power of 2".into(), pow2));
    let ell = order.trailing_zeros() as usize;
    report.ell = Some(ell);
    report.checks.push(("ell <= 2^k - 1".into(), (ell as u64) <= ell_bound));
    report.transitive = Some(g.orbit(0).len() == m.degree);
    report
        .checks
        .push(("fiber action is transitive".into(), report.transitive == Some(true)));
    match lower_central_series(&g, cap) {
        Ok(series) => {
            report.series_orders = series.iter().map(PermGroup::order).collect();
            let nilpotent = series.last().unwrap().is_trivial();
            report.checks.push(("image is nilpotent".into(), nilpotent));
            if nilpotent {
                let class = series.len() - 1;
                report.class = Some(class);
                if ell >= 2 {
                    report.checks.push(("class <= ell - 1".into(), class < ell));
                }
            }
        }
        Err(e) => report.note = Some(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn word_parsing_and_reduction() {
        let w = Word::parse("a b a^-1 B").unwrap();
        assert_eq!(w, Word(vec![1, 2, -1, -2]));
        assert_eq!(w.to_string(), "abAB");
        assert!(Word::parse("aA").unwrap().reduced().is_empty());
        assert!(Word::parse("a+b").is_err());
    }

    #[test]
    fn magnus_of_generator_and_commutator() {
        let a = magnus(&Word::parse("a").unwrap(), 2, 2).unwrap();
        assert_eq!(a.to_string(), "1 + X1");
        let c = magnus(&Word::parse("abAB").unwrap(), 2, 2).unwrap();
        assert_eq!(c.terms().len(), 3);
        assert_eq!(c.coefficient(&[0, 1]), b(1));
        assert_eq!(c.coefficient(&[1, 0]), b(-1));
        assert!(magnus(&Word::parse("aA").unwrap(), 2, 4).unwrap().is_one());
    }

    #[test]
    fn inverse_series_is_inverse() {
        let w = Word::parse("abbaBaab").unwrap();
        let s = magnus(&w, 2, 5).unwrap().mul(&magnus(&w.inverse(), 2, 5).unwrap());
        assert!(s.is_one());
    }

    #[test]
    fn lcs_degrees_of_commutators() {
        assert_eq!(
            lcs_degree(&Word::parse("a").unwrap(), 2, 4).unwrap(),
            LcsDepth::Exact(1)
        );
        assert_eq!(
            lcs_degree(&Word::parse("abAB").unwrap(), 2, 4).unwrap(),
            LcsDepth::Exact(2)
        );
        assert_eq!(lcs_degree(&left_normed(&[0, 1, 1]), 2, 4).unwrap(), LcsDepth::Exact(3));
        assert_eq!(
            lcs_degree(&left_normed(&[0, 1, 1, 1]), 2, 3).unwrap(),
            LcsDepth::AtLeast(4)
        );
        assert!(lcs_degree(&Word::identity(), 2, 4).is_err());
    }

    fn cycle(n: usize, shift: usize) -> Perm {
        (0..n).map(|i| ((i + shift) % n) as u32).collect()
    }

    #[test]
    fn dihedral_group_of_order_eight() {
        let r = cycle(4, 1);
        let s: Perm = vec![0, 3, 2, 1];
        let g = group_closure(4, &[r, s], 1 << 16).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(nilpotency_class(&g, 1 << 16).unwrap(), Some(2));
    }

    #[test]
    fn klein_four_group_is_abelian() {
        let g = group_closure(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], 1 << 16).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(nilpotency_class(&g, 1 << 16).unwrap(), Some(1));
    }

    #[test]
    fn iterated_wreath_product() {
        let gens = vec![
            vec![1, 0, 2, 3, 4, 5, 6, 7],
            vec![2, 3, 0, 1, 4, 5, 6, 7],
            vec![4, 5, 6, 7, 0, 1, 2, 3],
        ];
        let g = group_closure(8, &gens, 1 << 16).unwrap();
        assert_eq!(g.order(), 128);
        let class = nilpotency_class(&g, 1 << 16).unwrap().unwrap();
        assert_eq!(class, 4);
        assert!(class <= 6);
    }

    #[test]
    fn symmetric_group_is_not_nilpotent() {
        let g = group_closure(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(nilpotency_class(&g, 100).unwrap(), None);
        assert!(group_closure(3, &[vec![1, 0, 2], vec![1, 2, 0]], 5).is_err());
    }

    #[test]
    fn punctured_torus_group_is_free_of_rank_two() {
        use crate::surface::{standard_polygon, FaceComplex};
        let mut cx = FaceComplex::of(&standard_polygon(1));
        cx.subdivide(0);
        cx.subdivide(1);
        cx.star(0);
        cx.boundary[0] = true;
        let s = cx.build().unwrap();
        let fb = free_basis(&s).unwrap();
        assert_eq!(fb.rank, 2);
        let hole = (0..s.num_faces()).find(|&f| s.is_boundary_face(f)).unwrap();
        let w = fb.word_of(s.face(hole));
        assert_eq!(lcs_degree(&w, 2, 4).unwrap(), LcsDepth::Exact(2));
        // every filled face is trivial
        for f in (0..s.num_faces()).filter(|&f| !s.is_boundary_face(f)) {
            assert!(fb.word_of(s.face(f)).is_empty());
        }
        assert!(free_basis(&standard_polygon(2)).is_err());
    }

    #[test]
    fn core_report_for_a_single_swap() {
        let m = Monodromy {
            degree: 2,
            permutations: vec![vec![1, 0], vec![0, 1]],
        };
        let r = normal_core_report(&m, 1, 1 << 16);
        assert_eq!(r.ell, Some(1));
        assert_eq!(r.class, Some(1));
        assert!(r.all_checks());
    }
}
