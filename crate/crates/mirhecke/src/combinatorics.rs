//! Partitions, bipartitions, standard bitableaux, contents, dominance order,
//! minimal coset representatives, and permutation machinery.
//!
//! Enumeration orders are deterministic everywhere: bipartitions are sorted by
//! their partial-sum key in descending lexicographic order (a linear extension
//! of reverse dominance), and tableaux of a fixed shape are ordered
//! lexicographically by the position sequence of the entries 1..n. Matrix rows
//! and columns across the whole engine inherit these orders.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("not a partition: parts must be positive and weakly decreasing")]
    BadPartition,
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
}

/// A partition: weakly decreasing sequence of positive integers (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatoricsError::BadPartition);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, 1-based; zero beyond the last row.
    pub fn row(&self, r: usize) -> usize {
        if r >= 1 && r <= self.parts.len() {
            self.parts[r - 1]
        } else {
            0
        }
    }

    pub fn is_single_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn transpose(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// All partitions of n, largest part first (descending lexicographic).
    pub fn enumerate(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n.max(1), &mut Vec::new(), &mut out);
        if n == 0 {
            return vec![Partition::empty()];
        }
        out
    }

    /// Number of boxes on content diagonal j.
    pub fn diagonal_count(&self, j: i64) -> usize {
        self.parts
            .iter()
            .enumerate()
            .filter(|(i, &p)| {
                let row = (*i + 1) as i64;
                // box (row, col) has content col - row; diagonal j hits row iff
                // 1 <= j + row <= p
                j + row >= 1 && j + row <= p as i64
            })
            .count()
    }

    /// Row index (1-based) of the removable box with content j, if any.
    pub fn removable_box_of_content(&self, j: i64) -> Option<usize> {
        for (i, &p) in self.parts.iter().enumerate() {
            let row = i + 1;
            let content = p as i64 - row as i64;
            let removable = i + 1 == self.parts.len() || self.parts[i + 1] < p;
            if content == j && removable {
                return Some(row);
            }
        }
        None
    }

    pub fn remove_box_of_content(&self, j: i64) -> Option<Partition> {
        let row = self.removable_box_of_content(j)?;
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        parts.retain(|&p| p > 0);
        Some(Partition { parts })
    }

    /// Row index (1-based) where a box of content j can be added, if any.
    pub fn addable_box_of_content(&self, j: i64) -> Option<usize> {
        for row in 1..=self.parts.len() + 1 {
            let cur = self.row(row);
            let above = if row == 1 {
                usize::MAX
            } else {
                self.row(row - 1)
            };
            if above > cur {
                let content = (cur + 1) as i64 - row as i64;
                if content == j {
                    return Some(row);
                }
            }
        }
        None
    }

    pub fn add_box_of_content(&self, j: i64) -> Option<Partition> {
        let row = self.addable_box_of_content(j)?;
        let mut parts = self.parts.clone();
        if row > parts.len() {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Some(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

/// An ordered pair of partitions with total size n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn size(&self) -> usize {
        self.first.size() + self.second.size()
    }

    pub fn component(&self, comp: usize) -> &Partition {
        match comp {
            1 => &self.first,
            2 => &self.second,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    /// Membership in Lambda'(n): second component a single column (or empty).
    pub fn is_second_column(&self) -> bool {
        self.second.is_single_column()
    }

    /// Partial-sum key of length 2n: prefix sums of component 1 rows padded to
    /// n entries, then cumulative totals through component 2 rows padded to n.
    /// Dominance-comparable bipartitions compare pointwise on this key.
    pub fn key(&self) -> Vec<usize> {
        let n = self.size();
        let mut key = Vec::with_capacity(2 * n);
        let mut acc = 0usize;
        for j in 0..n {
            acc += self.first.row(j + 1);
            key.push(acc);
        }
        for j in 0..n {
            acc += self.second.row(j + 1);
            key.push(acc);
        }
        key
    }

    /// All bipartitions of n in descending key order; when restricted, only
    /// those with second component a single column.
    pub fn enumerate(n: usize, restrict_second_to_column: bool) -> Vec<Bipartition> {
        let mut out = Vec::new();
        for k in 0..=n {
            for l1 in Partition::enumerate(k) {
                for l2 in Partition::enumerate(n - k) {
                    if restrict_second_to_column && !l2.is_single_column() {
                        continue;
                    }
                    out.push(Bipartition::new(l1.clone(), l2));
                }
            }
        }
        out.sort_by_key(|b| std::cmp::Reverse(b.key()));
        out
    }

    /// The dominance partial order: a <= b iff every partial sum of a is <= the
    /// corresponding partial sum of b. Requires equal total size.
    pub fn dominance_leq(a: &Bipartition, b: &Bipartition) -> Result<bool, CombinatoricsError> {
        if a.size() != b.size() {
            return Err(CombinatoricsError::SizeMismatch(
                a.to_string(),
                b.to_string(),
            ));
        }
        Ok(a.key().iter().zip(b.key().iter()).all(|(x, y)| x <= y))
    }

    pub fn dominates_strictly(&self, other: &Bipartition) -> bool {
        self != other && Bipartition::dominance_leq(other, self).unwrap_or(false)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.first, self.second)
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.first)?;
        seq.serialize_element(&self.second)?;
        seq.end()
    }
}

/// Box address: (component, row, column), all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxPos {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

/// A standard bitableau: the shape's boxes filled bijectively with 1..n,
/// increasing along rows and down columns within each component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StdBiTableau {
    shape: Bipartition,
    /// rows[comp-1][row-1][col-1] = entry
    rows: [Vec<Vec<usize>>; 2],
    /// positions[entry-1] = box of that entry
    positions: Vec<BoxPos>,
}

impl StdBiTableau {
    pub fn from_rows(
        shape: Bipartition,
        rows: [Vec<Vec<usize>>; 2],
    ) -> Result<Self, CombinatoricsError> {
        let n = shape.size();
        let mut positions = vec![None; n];
        for comp in 1..=2 {
            let part = shape.component(comp);
            let comp_rows = &rows[comp - 1];
            if comp_rows.len() != part.len() {
                return Err(CombinatoricsError::BadPartition);
            }
            for (r, row) in comp_rows.iter().enumerate() {
                if row.len() != part.row(r + 1) {
                    return Err(CombinatoricsError::BadPartition);
                }
                for (c, &entry) in row.iter().enumerate() {
                    if entry == 0 || entry > n || positions[entry - 1].is_some() {
                        return Err(CombinatoricsError::BadPartition);
                    }
                    positions[entry - 1] = Some(BoxPos {
                        comp,
                        row: r + 1,
                        col: c + 1,
                    });
                    // increasing along rows and down columns
                    if c > 0 && row[c - 1] >= entry {
                        return Err(CombinatoricsError::BadPartition);
                    }
                    if r > 0 && comp_rows[r - 1][c] >= entry {
                        return Err(CombinatoricsError::BadPartition);
                    }
                }
            }
        }
        let positions = positions
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(CombinatoricsError::BadPartition)?;
        Ok(StdBiTableau {
            shape,
            rows,
            positions,
        })
    }

    pub fn shape(&self) -> &Bipartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>; 2] {
        &self.rows
    }

    pub fn position_of(&self, entry: usize) -> BoxPos {
        self.positions[entry - 1]
    }

    pub fn entry_at(&self, pos: BoxPos) -> usize {
        self.rows[pos.comp - 1][pos.row - 1][pos.col - 1]
    }

    /// Content of entry i: (component - 1) + (column - row).
    pub fn content(&self, i: usize) -> i64 {
        let p = self.position_of(i);
        (p.comp as i64 - 1) + (p.col as i64 - p.row as i64)
    }

    /// Component indicator: 1 when entry i is in the first tableau, else 0.
    pub fn epsilon(&self, i: usize) -> bool {
        self.position_of(i).comp == 1
    }

    /// The position sequence (box of 1, box of 2, ...), the tableau sort key.
    pub fn position_sequence(&self) -> &[BoxPos] {
        &self.positions
    }

    /// Exchange entries i and i+1. Returns None when the result is not standard
    /// (i.e. they share a row or column of one component tableau).
    pub fn swap_adjacent(&self, i: usize) -> Option<StdBiTableau> {
        let a = self.position_of(i);
        let b = self.position_of(i + 1);
        if a.comp == b.comp && (a.row == b.row || a.col == b.col) {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[a.comp - 1][a.row - 1][a.col - 1] = i + 1;
        rows[b.comp - 1][b.row - 1][b.col - 1] = i;
        let mut positions = self.positions.clone();
        positions.swap(i - 1, i);
        Some(StdBiTableau {
            shape: self.shape.clone(),
            rows,
            positions,
        })
    }

    /// Delete the box containing n (always a removable corner). Returns the
    /// smaller tableau.
    pub fn remove_last(&self) -> StdBiTableau {
        let n = self.size();
        let p = self.position_of(n);
        let mut rows = self.rows.clone();
        rows[p.comp - 1][p.row - 1].pop();
        if rows[p.comp - 1][p.row - 1].is_empty() {
            rows[p.comp - 1].pop();
        }
        let mut positions = self.positions.clone();
        positions.pop();
        let strip = |part: &Partition, comp: usize| -> Partition {
            if p.comp == comp {
                let mut parts = part.parts().to_vec();
                parts[p.row - 1] -= 1;
                parts.retain(|&x| x > 0);
                Partition::new(parts).unwrap()
            } else {
                part.clone()
            }
        };
        let shape = Bipartition::new(strip(&self.shape.first, 1), strip(&self.shape.second, 2));
        StdBiTableau {
            shape,
            rows,
            positions,
        }
    }
}

impl fmt::Display for StdBiTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |rows: &Vec<Vec<usize>>| -> String {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join("|")
        };
        write!(f, "({};{})", render(&self.rows[0]), render(&self.rows[1]))
    }
}

impl Serialize for StdBiTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.rows[0])?;
        seq.serialize_element(&self.rows[1])?;
        seq.end()
    }
}

/// All standard bitableaux of the shape, ordered lexicographically by the
/// position sequence of 1..n.
pub fn standard_bitableaux(shape: &Bipartition) -> Vec<StdBiTableau> {
    let n = shape.size();
    let mut out = Vec::new();
    // Grow the filling entry by entry; at each step the filled region of each
    // component must stay a partition, so candidates are its addable corners.
    let mut filled: [Vec<usize>; 2] = [vec![0; shape.first.len()], vec![0; shape.second.len()]];
    let mut rows: [Vec<Vec<usize>>; 2] = [
        shape.first.parts().iter().map(|&p| vec![0; p]).collect(),
        shape.second.parts().iter().map(|&p| vec![0; p]).collect(),
    ];
    fn rec(
        entry: usize,
        n: usize,
        shape: &Bipartition,
        filled: &mut [Vec<usize>; 2],
        rows: &mut [Vec<Vec<usize>>; 2],
        out: &mut Vec<StdBiTableau>,
    ) {
        if entry > n {
            let built = StdBiTableau::from_rows(shape.clone(), [rows[0].clone(), rows[1].clone()])
                .expect("construction preserves standardness");
            out.push(built);
            return;
        }
        for comp in 1..=2 {
            let part = shape.component(comp);
            for r in 0..part.len() {
                let used = filled[comp - 1][r];
                let cap = part.row(r + 1);
                let above = if r == 0 {
                    usize::MAX
                } else {
                    filled[comp - 1][r - 1]
                };
                if used < cap && above > used {
                    rows[comp - 1][r][used] = entry;
                    filled[comp - 1][r] += 1;
                    rec(entry + 1, n, shape, filled, rows, out);
                    filled[comp - 1][r] -= 1;
                    rows[comp - 1][r][used] = 0;
                }
            }
        }
    }
    rec(1, n, shape, &mut filled, &mut rows, &mut out);
    out
}

/// The superstandard bitableau: rows of component 1 filled first in order,
/// then component 2.
pub fn superstandard(shape: &Bipartition) -> StdBiTableau {
    let mut next = 1usize;
    let mut rows: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
    for comp in 1..=2 {
        for &len in shape.component(comp).parts() {
            let row: Vec<usize> = (next..next + len).collect();
            next += len;
            rows[comp - 1].push(row);
        }
    }
    StdBiTableau::from_rows(shape.clone(), rows).expect("superstandard filling is standard")
}

/// A permutation of {1..n}, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v >= 1 && v <= n && !seen[v - 1], "not a bijection of 1..n");
            seen[v - 1] = true;
        }
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition s_i = (i, i+1) in S_n.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Function composition: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word (s_{i_1}, ..., s_{i_r}) with self = s_{i_1} ... s_{i_r},
    /// obtained by repeatedly stripping the leftmost descent on the right.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::new();
        loop {
            // leftmost i with w(i) > w(i+1); right-multiplying by s_i drops length
            let descent = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]);
            match descent {
                Some(i) => {
                    w.swap(i, i + 1);
                    word.push(i + 1);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }

    /// Rebuild from a word of simple-reflection indices.
    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        word.iter().fold(Permutation::identity(n), |acc, &i| {
            acc.compose(&Permutation::transposition(n, i))
        })
    }

    /// All permutations of S_n in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| images[i] < images[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        if n == 0 {
            return vec![Permutation::identity(0)];
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.images
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// The permutation d(s) with s = d(s) applied to the superstandard tableau of
/// its shape (relabeling entry i -> d(s)(i)).
pub fn d_perm(s: &StdBiTableau) -> Permutation {
    let t = superstandard(s.shape());
    let n = s.size();
    let images = (1..=n).map(|i| s.entry_at(t.position_of(i))).collect();
    Permutation::from_images(images)
}

/// Relabel tableau entries i -> w(i); the result must again be standard.
pub fn relabel(t: &StdBiTableau, w: &Permutation) -> Result<StdBiTableau, CombinatoricsError> {
    let rows = [
        t.rows()[0]
            .iter()
            .map(|r| r.iter().map(|&e| w.apply(e)).collect())
            .collect(),
        t.rows()[1]
            .iter()
            .map(|r| r.iter().map(|&e| w.apply(e)).collect())
            .collect(),
    ];
    StdBiTableau::from_rows(t.shape().clone(), rows)
}

/// Minimal-length coset representatives of S_n / (S_k x S_{n-k}): permutations
/// increasing on 1..k and on k+1..n. There are C(n,k) of them, ordered by image.
pub fn min_coset_reps(n: usize, k: usize) -> Vec<Permutation> {
    assert!(k <= n);
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (1..=k).collect();
    loop {
        let mut images = subset.clone();
        let complement: Vec<usize> = (1..=n).filter(|v| !subset.contains(v)).collect();
        images.extend(complement);
        out.push(Permutation::from_images(images));
        // next k-subset of {1..n} in lexicographic order
        if k == 0 {
            break;
        }
        let mut i = k;
        while i > 0 && subset[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out
}

/// Number of standard tableaux of a single-partition shape.
pub fn tableau_count(theta: &Partition) -> usize {
    standard_bitableaux(&Bipartition::new(theta.clone(), Partition::empty())).len()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// dim R_n = sum over k of k! * C(n,k)^2.
pub fn mirabolic_dimension(n: usize) -> usize {
    (0..=n)
        .map(|k| factorial(k) * binomial(n, k) * binomial(n, k))
        .sum()
}
