//! Independent finite-field oracle: complete flags over F_q, triples
//! (flag, flag, vector) classified into GL_n-orbits by union-find closure
//! under a small generating set, orbit labels (w, beta) matched against
//! constructed representatives, and integer structure constants counted
//! directly from the convolution product. Everything here is integer
//! combinatorics at a fixed prime power; the generic-q engine never enters.
//!
//! Vectors and echelon rows pack into base-q integers so set membership and
//! the orbit closure run on flat arrays.

use crate::combinatorics::Permutation;
use crate::linalg::RowSpace;
use crate::report::Assertion;
use crate::scalar::{rat, Rat};
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConvolutionError {
    #[error("unsupported field size {0} (need a prime power in 2..=4)")]
    BadField(u32),
    #[error("budget exceeded: {0} triples (limit {1})")]
    BudgetExceeded(usize, usize),
    #[error("orbit/label mismatch: {0}")]
    LabelMismatch(String),
    #[error("structure constants depend on the representative for orbit {0}")]
    RepresentativeDependence(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

const TRIPLE_BUDGET: usize = 2_000_000;
const CACHE_VERSION: u32 = 1;

/// Arithmetic tables for a small finite field; prime fields use modular
/// arithmetic, GF(4) the polynomial model with x^2 = x + 1.
#[derive(Debug, Clone)]
pub struct Gf {
    pub q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: u32) -> Result<Gf, ConvolutionError> {
        let table = |f: &dyn Fn(u32, u32) -> u32| -> Vec<u8> {
            (0..q * q).map(|i| f(i / q, i % q) as u8).collect()
        };
        let (add, mul): (Vec<u8>, Vec<u8>) = match q {
            2 | 3 | 5 | 7 => (table(&|a, b| (a + b) % q), table(&|a, b| (a * b) % q)),
            4 => (
                table(&|a, b| a ^ b),
                table(&|a, b| {
                    // polynomial multiplication of a1 x + a0 modulo x^2 + x + 1
                    let (a1, a0) = (a >> 1, a & 1);
                    let (b1, b0) = (b >> 1, b & 1);
                    let c0 = a0 & b0;
                    let c1 = (a1 & b0) ^ (a0 & b1);
                    let c2 = a1 & b1;
                    // x^2 = x + 1
                    ((c1 ^ c2) << 1) | (c0 ^ c2)
                }),
            ),
            other => return Err(ConvolutionError::BadField(other)),
        };
        let mut inv = vec![0u8; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Ok(Gf { q, add, mul, inv })
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[(a as u32 * self.q + b as u32) as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[(a as u32 * self.q + b as u32) as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            return 0;
        }
        // find b with a + b = 0
        (1..self.q as u8)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse exists")
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        if self.q == 2 {
            return 1;
        }
        'outer: for g in 2..self.q as u8 {
            let mut x = g;
            for _ in 0..self.q - 2 {
                if x == 1 {
                    continue 'outer;
                }
                x = self.mul(x, g);
            }
            if x == 1 {
                return g;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }
}

/// Packed vector helpers: coordinate i lives in base-q digit i.
fn unpack(v: u32, n: usize, q: u32) -> Vec<u8> {
    let mut digits = Vec::with_capacity(n);
    let mut x = v;
    for _ in 0..n {
        digits.push((x % q) as u8);
        x /= q;
    }
    digits
}

fn pack(digits: &[u8], q: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * q + d as u32)
}

fn vec_sub(gf: &Gf, a: u32, b: u32, n: usize) -> u32 {
    let da = unpack(a, n, gf.q);
    let db = unpack(b, n, gf.q);
    let diff: Vec<u8> = da
        .iter()
        .zip(&db)
        .map(|(&x, &y)| gf.add(x, gf.neg(y)))
        .collect();
    pack(&diff, gf.q)
}

/// An n x n matrix over the field, rows of packed entries unpacked on demand.
#[derive(Debug, Clone)]
pub struct GlElement {
    pub n: usize,
    pub entries: Vec<Vec<u8>>,
}

impl GlElement {
    pub fn identity(n: usize) -> Self {
        GlElement {
            n,
            entries: (0..n)
                .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
                .collect(),
        }
    }

    /// Cyclic shift of the basis: e_i -> e_{i+1}, e_n -> e_1.
    pub fn cycle(n: usize) -> Self {
        let mut g = GlElement {
            n,
            entries: vec![vec![0; n]; n],
        };
        for i in 0..n {
            g.entries[(i + 1) % n][i] = 1;
        }
        g
    }

    /// The transvection I + E_{12}.
    pub fn transvection(n: usize) -> Self {
        let mut g = GlElement::identity(n);
        g.entries[0][1] = 1;
        g
    }

    /// diag(c, 1, ..., 1).
    pub fn dilation(n: usize, c: u8) -> Self {
        let mut g = GlElement::identity(n);
        g.entries[0][0] = c;
        g
    }

    pub fn apply_vec(&self, gf: &Gf, v: u32) -> u32 {
        let x = unpack(v, self.n, gf.q);
        let y: Vec<u8> = (0..self.n)
            .map(|r| {
                x.iter().enumerate().fold(0u8, |acc, (c, &xc)| {
                    gf.add(acc, gf.mul(self.entries[r][c], xc))
                })
            })
            .collect();
        pack(&y, gf.q)
    }
}

/// A subspace in reduced row-echelon form; rows are packed vectors sorted by
/// pivot, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub rows: Vec<u32>,
}

impl Subspace {
    /// Canonicalize a spanning set.
    pub fn from_rows(gf: &Gf, n: usize, rows: &[u32]) -> Subspace {
        let mut mat: Vec<Vec<u8>> = rows.iter().map(|&r| unpack(r, n, gf.q)).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(row) = (rank..mat.len()).find(|&r| mat[r][col] != 0) else {
                continue;
            };
            mat.swap(rank, row);
            let inv = gf.inv(mat[rank][col]);
            for entry in mat[rank].iter_mut() {
                *entry = gf.mul(*entry, inv);
            }
            let pivot_row = mat[rank].clone();
            for (r, row) in mat.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (entry, &p) in row.iter_mut().zip(&pivot_row) {
                        let sub = gf.mul(f, p);
                        *entry = gf.add(*entry, gf.neg(sub));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        mat.truncate(rank);
        Subspace {
            rows: mat.iter().map(|r| pack(r, gf.q)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, gf: &Gf, n: usize, v: u32) -> bool {
        let mut x = unpack(v, n, gf.q);
        for &row in &self.rows {
            let r = unpack(row, n, gf.q);
            let pivot = r.iter().position(|&d| d != 0).expect("nonzero row");
            if x[pivot] != 0 {
                let f = x[pivot];
                for c in 0..n {
                    let sub = gf.mul(f, r[c]);
                    x[c] = gf.add(x[c], gf.neg(sub));
                }
            }
        }
        x.iter().all(|&d| d == 0)
    }

    pub fn transform(&self, gf: &Gf, n: usize, g: &GlElement) -> Subspace {
        let moved: Vec<u32> = self.rows.iter().map(|&r| g.apply_vec(gf, r)).collect();
        Subspace::from_rows(gf, n, &moved)
    }
}

/// A complete flag, stored as the proper levels F_1 .. F_{n-1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    pub levels: Vec<Subspace>,
}

impl Flag {
    pub fn transform(&self, gf: &Gf, n: usize, g: &GlElement) -> Flag {
        Flag {
            levels: self.levels.iter().map(|s| s.transform(gf, n, g)).collect(),
        }
    }

    /// The standard flag spanned by prefixes of a permuted basis:
    /// level j = span(e_{w(1)}, ..., e_{w(j)}).
    pub fn from_permuted_basis(gf: &Gf, n: usize, w: &Permutation) -> Flag {
        let levels = (1..n)
            .map(|j| {
                let rows: Vec<u32> = (1..=j)
                    .map(|i| {
                        let mut e = vec![0u8; n];
                        e[w.apply(i) - 1] = 1;
                        pack(&e, gf.q)
                    })
                    .collect();
                Subspace::from_rows(gf, n, &rows)
            })
            .collect();
        Flag { levels }
    }
}

/// q-factorial [n]_q! = product of (1 + q + ... + q^{k-1}).
pub fn q_factorial(n: usize, q: u32) -> usize {
    (1..=n)
        .map(|k| (0..k).map(|e| (q as usize).pow(e as u32)).sum::<usize>())
        .product()
}

/// Enumerate all complete flags, built line by line, deduplicated by the
/// canonical echelon form at every level. Deterministic order.
pub fn enumerate_flags(n: usize, q: u32) -> Result<Vec<Flag>, ConvolutionError> {
    if !(2..=4).contains(&q) {
        return Err(ConvolutionError::BadField(q));
    }
    let gf = Gf::new(q)?;
    let nv = (q as usize).pow(n as u32);
    let states = q_factorial(n, q).pow(2) * nv;
    if n > 4 || states > TRIPLE_BUDGET {
        return Err(ConvolutionError::BudgetExceeded(states, TRIPLE_BUDGET));
    }
    let mut prefixes: Vec<Flag> = vec![Flag { levels: vec![] }];
    for level in 1..n {
        let mut next = Vec::new();
        for prefix in &prefixes {
            let mut seen: Vec<Subspace> = Vec::new();
            for v in 1..nv as u32 {
                let in_prev = level >= 2 && prefix.levels[level - 2].contains(&gf, n, v);
                if in_prev || (level == 1 && false) {
                    continue;
                }
                let mut rows: Vec<u32> = if level >= 2 {
                    prefix.levels[level - 2].rows.clone()
                } else {
                    vec![]
                };
                rows.push(v);
                let sub = Subspace::from_rows(&gf, n, &rows);
                if sub.dim() != level || seen.contains(&sub) {
                    continue;
                }
                seen.push(sub.clone());
                let mut levels = prefix.levels.clone();
                levels.push(sub);
                next.push(Flag { levels });
            }
        }
        prefixes = next;
    }
    debug_assert_eq!(prefixes.len(), q_factorial(n, q));
    Ok(prefixes)
}

/// Relative position of two flags: the permutation w with
/// w(j) = i exactly when the incidence number at (i, j) is 1.
#[allow(clippy::needless_range_loop)]
pub fn relative_position(gf: &Gf, n: usize, a: &Flag, b: &Flag) -> Permutation {
    // d[i][j] = dim(F_i cap F'_j), computed as i + j - rank of stacked bases
    let level_rows = |f: &Flag, i: usize| -> Vec<u32> {
        if i == 0 {
            vec![]
        } else if i < n {
            f.levels[i - 1].rows.clone()
        } else {
            // full space
            (0..n)
                .map(|r| {
                    let mut e = vec![0u8; n];
                    e[r] = 1;
                    pack(&e, gf.q)
                })
                .collect()
        }
    };
    let mut d = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            let mut rows = level_rows(a, i);
            rows.extend(level_rows(b, j));
            let rank = Subspace::from_rows(gf, n, &rows).dim() as i64;
            d[i][j] = i as i64 + j as i64 - rank;
        }
    }
    let mut images = vec![0usize; n];
    for j in 1..=n {
        for i in 1..=n {
            let entry = d[i][j] - d[i][j - 1] - d[i - 1][j] + d[i - 1][j - 1];
            debug_assert!(entry == 0 || entry == 1);
            if entry == 1 {
                images[j - 1] = i;
            }
        }
    }
    Permutation::from_images(images)
}

/// An orbit label: the pair (w, beta) with beta stored as a bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitLabel {
    pub w: Vec<usize>,
    pub beta: u32,
}

impl OrbitLabel {
    pub fn beta_set(&self) -> Vec<usize> {
        (0..self.w.len())
            .filter(|i| self.beta & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }
}

/// Validity of (w, beta): whenever i is in beta and j is not, i < j or
/// w(i) < w(j). The matching representative triple pairs the standard flag
/// with the flag of the w^{-1}-permuted basis (see build_atlas); with that
/// convention the constructed representatives hit every orbit exactly once
/// and the flag-swap involution acts by (w, beta) -> (w^{-1}, w(beta)).
pub fn valid_pair(w: &Permutation, beta: u32) -> bool {
    let n = w.n();
    for i in 1..=n {
        if beta & (1 << (i - 1)) == 0 {
            continue;
        }
        for j in 1..=n {
            if beta & (1 << (j - 1)) != 0 {
                continue;
            }
            if i > j && w.apply(i) > w.apply(j) {
                return false;
            }
        }
    }
    true
}

/// All valid labels in canonical order: w by lexicographic image, beta by mask.
pub fn enumerate_labels(n: usize) -> Vec<(Permutation, u32)> {
    let mut out = Vec::new();
    for w in Permutation::all(n) {
        for beta in 0..(1u32 << n) {
            if valid_pair(&w, beta) {
                out.push((w.clone(), beta));
            }
        }
    }
    out
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            // path halving
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// The full orbit atlas at (n, q): flags, labels, the state -> orbit map, and
/// the integer structure constants.
pub struct OrbitAtlas {
    pub n: usize,
    pub q: u32,
    pub gf: Gf,
    pub flags: Vec<Flag>,
    pub labels: Vec<OrbitLabel>,
    /// orbit index of every state (f * NF + f') * NV + v
    pub state_label: Vec<u16>,
    /// representative state per orbit (the constructed one)
    pub representatives: Vec<u32>,
    /// dense tensor c[(k * N + i) * N + j]
    pub constants: Vec<u32>,
}

impl OrbitAtlas {
    pub fn n_flags(&self) -> usize {
        self.flags.len()
    }

    pub fn n_vectors(&self) -> usize {
        (self.q as usize).pow(self.n as u32)
    }

    pub fn n_orbits(&self) -> usize {
        self.labels.len()
    }

    pub fn state_index(&self, f: usize, fp: usize, v: u32) -> usize {
        (f * self.n_flags() + fp) * self.n_vectors() + v as usize
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let nn = self.n_orbits();
        self.constants[(k * nn + i) * nn + j]
    }

    /// Orbit index of the label (w, beta); labels are in canonical order.
    pub fn label_index(&self, w: &Permutation, beta: u32) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.w == w.images() && l.beta == beta)
    }
}

/// Build the atlas: enumerate flags, classify all triples by union-find
/// closure under the GL_n generating set, and match each class against the
/// constructed representative of a valid pair (w, beta).
pub fn build_atlas(n: usize, q: u32) -> Result<OrbitAtlas, ConvolutionError> {
    let gf = Gf::new(q)?;
    let flags = enumerate_flags(n, q)?;
    let nf = flags.len();
    let nv = (q as usize).pow(n as u32);
    let n_states = nf * nf * nv;

    let mut flag_index: HashMap<Flag, u32> = HashMap::with_capacity(nf);
    for (i, f) in flags.iter().enumerate() {
        flag_index.insert(f.clone(), i as u32);
    }

    // generating set: cycle, transvection, dilation (dropped when trivial)
    let mut generators = Vec::new();
    if n >= 2 {
        generators.push(GlElement::cycle(n));
        generators.push(GlElement::transvection(n));
    }
    if q > 2 {
        generators.push(GlElement::dilation(n, gf.primitive()));
    }

    // action tables
    let flag_maps: Vec<Vec<u32>> = generators
        .iter()
        .map(|g| {
            flags
                .iter()
                .map(|f| flag_index[&f.transform(&gf, n, g)])
                .collect()
        })
        .collect();
    let vec_maps: Vec<Vec<u32>> = generators
        .iter()
        .map(|g| (0..nv as u32).map(|v| g.apply_vec(&gf, v)).collect())
        .collect();

    let mut uf = UnionFind::new(n_states);
    for s in 0..n_states as u32 {
        let v = s % nv as u32;
        let fp = (s / nv as u32) % nf as u32;
        let f = s / (nv as u32 * nf as u32);
        for (fm, vm) in flag_maps.iter().zip(&vec_maps) {
            let image = (fm[f as usize] * nf as u32 + fm[fp as usize]) * nv as u32 + vm[v as usize];
            uf.union(s, image);
        }
    }

    // label the classes by constructed representatives
    let pairs = enumerate_labels(n);
    let expected = crate::combinatorics::mirabolic_dimension(n);
    if pairs.len() != expected {
        return Err(ConvolutionError::LabelMismatch(format!(
            "{} valid pairs but dimension {}",
            pairs.len(),
            expected
        )));
    }
    let standard = Flag::from_permuted_basis(&gf, n, &Permutation::identity(n));
    let std_idx = flag_index[&standard] as usize;
    let mut root_label: HashMap<u32, u16> = HashMap::new();
    let mut labels = Vec::with_capacity(pairs.len());
    let mut representatives = Vec::with_capacity(pairs.len());
    for (idx, (w, beta)) in pairs.iter().enumerate() {
        let flag_w = Flag::from_permuted_basis(&gf, n, &w.inverse());
        let fp = flag_index[&flag_w] as usize;
        let v: u32 = {
            let mut digits = vec![0u8; n];
            for i in 1..=n {
                if beta & (1 << (i - 1)) != 0 {
                    digits[i - 1] = 1;
                }
            }
            pack(&digits, q)
        };
        let state = (std_idx * nf + fp) * nv + v as usize;
        let root = uf.find(state as u32);
        if root_label.insert(root, idx as u16).is_some() {
            return Err(ConvolutionError::LabelMismatch(format!(
                "two labels landed in one orbit at pair index {}",
                idx
            )));
        }
        labels.push(OrbitLabel {
            w: w.images().to_vec(),
            beta: *beta,
        });
        representatives.push(state as u32);
    }

    // paint every state; every root must carry a label (bijection)
    let mut state_label = vec![0u16; n_states];
    for s in 0..n_states as u32 {
        let root = uf.find(s);
        match root_label.get(&root) {
            Some(&l) => state_label[s as usize] = l,
            None => {
                return Err(ConvolutionError::LabelMismatch(
                    "orbit without a constructed representative".into(),
                ))
            }
        }
    }

    let mut atlas = OrbitAtlas {
        n,
        q,
        gf,
        flags,
        labels,
        state_label,
        representatives,
        constants: Vec::new(),
    };
    fill_structure_constants(&mut atlas)?;
    Ok(atlas)
}

/// For each target orbit k with representative (F, F', v), count over all
/// (H, u) the pairs with (F, H, u) in orbit i and (H, F', v - u) in orbit j.
/// Cross-checked against extra representatives sampled per orbit.
fn fill_structure_constants(atlas: &mut OrbitAtlas) -> Result<(), ConvolutionError> {
    let nn = atlas.n_orbits();
    let nf = atlas.n_flags();
    let nv = atlas.n_vectors();
    let counts_for = |atlas: &OrbitAtlas, state: u32| -> Vec<u32> {
        let v = state % nv as u32;
        let fp = (state / nv as u32) % nf as u32;
        let f = state / (nv as u32 * nf as u32);
        let mut cnt = vec![0u32; nn * nn];
        for h in 0..nf {
            for u in 0..nv as u32 {
                let i = atlas.state_label[(f as usize * nf + h) * nv + u as usize] as usize;
                let diff = vec_sub(&atlas.gf, v, u, atlas.n);
                let j = atlas.state_label[(h * nf + fp as usize) * nv + diff as usize] as usize;
                cnt[i * nn + j] += 1;
            }
        }
        cnt
    };

    let mut constants = vec![0u32; nn * nn * nn];
    for k in 0..nn {
        let cnt = counts_for(atlas, atlas.representatives[k]);
        for i in 0..nn {
            for j in 0..nn {
                constants[(k * nn + i) * nn + j] = cnt[i * nn + j];
            }
        }
    }
    atlas.constants = constants;

    // representative independence on sampled states
    let mut per_orbit: Vec<Vec<u32>> = vec![Vec::new(); nn];
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddba11);
    let n_states = atlas.state_label.len();
    for _ in 0..(3 * nn) {
        let s = rng.gen_range(0..n_states) as u32;
        let k = atlas.state_label[s as usize] as usize;
        if per_orbit[k].len() < 3 {
            per_orbit[k].push(s);
        }
    }
    for (k, samples) in per_orbit.iter().enumerate() {
        for &s in samples {
            let cnt = counts_for(atlas, s);
            for i in 0..nn {
                for j in 0..nn {
                    if cnt[i * nn + j] != atlas.constant(i, j, k) {
                        return Err(ConvolutionError::RepresentativeDependence(k));
                    }
                }
            }
        }
    }
    Ok(())
}

/// An algebra element at fixed q: rational coordinates on the orbit basis.
pub type ConvElement = Vec<Rat>;

impl OrbitAtlas {
    pub fn basis_element(&self, orbit: usize) -> ConvElement {
        let mut x = vec![Rat::zero(); self.n_orbits()];
        x[orbit] = Rat::one();
        x
    }

    pub fn identity_element(&self) -> ConvElement {
        self.basis_element(0)
    }

    /// x * T_g for a single-orbit right factor.
    pub fn mul_by_orbit(&self, x: &ConvElement, g: usize) -> ConvElement {
        let nn = self.n_orbits();
        let mut out = vec![Rat::zero(); nn];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, out_k) in out.iter_mut().enumerate() {
                let c = self.constants[(k * nn + i) * nn + g];
                if c != 0 {
                    *out_k += xi * rat(c as i64);
                }
            }
        }
        out
    }

    /// Full product via the structure constants.
    pub fn mul_elements(&self, x: &ConvElement, y: &ConvElement) -> ConvElement {
        let nn = self.n_orbits();
        let mut out = vec![Rat::zero(); nn];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = xi * yj;
                for (k, out_k) in out.iter_mut().enumerate() {
                    let c = self.constants[(k * nn + i) * nn + j];
                    if c != 0 {
                        *out_k += &prod * rat(c as i64);
                    }
                }
            }
        }
        out
    }

    /// Index of the generator T_0 = T_{e, {1}}.
    pub fn t0_index(&self) -> usize {
        self.label_index(&Permutation::identity(self.n), 1)
            .expect("T_{e,{1}} is a valid pair")
    }

    /// Index of T_{s_i, empty}.
    pub fn ti_index(&self, i: usize) -> usize {
        self.label_index(&Permutation::transposition(self.n, i), 0)
            .expect("T_{s_i, empty} is a valid pair")
    }

    /// Trace of left multiplication by x on the algebra.
    pub fn regular_trace(&self, x: &ConvElement) -> Rat {
        let nn = self.n_orbits();
        let mut tr = Rat::zero();
        for k in 0..nn {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let c = self.constants[(k * nn + i) * nn + k];
                if c != 0 {
                    tr += xi * rat(c as i64);
                }
            }
        }
        tr
    }
}

/// Verify the six-relation presentation on the generators T_0 and T_i at the
/// atlas's specialized q, and numerically establish surjectivity: words in the
/// generators span the whole orbit function space.
pub fn verify_presentation(atlas: &OrbitAtlas, check_generation: bool) -> Vec<Assertion> {
    let n = atlas.n;
    let qr = rat(atlas.q as i64);
    let mut out = Vec::new();
    let scale = |x: &ConvElement, c: &Rat| -> ConvElement { x.iter().map(|a| a * c).collect() };
    let add = |x: &ConvElement, y: &ConvElement| -> ConvElement {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    };
    let one = atlas.identity_element();
    let t0 = atlas.basis_element(atlas.t0_index());
    let ti: Vec<ConvElement> = (1..n)
        .map(|i| atlas.basis_element(atlas.ti_index(i)))
        .collect();
    let tag = |rel: &str| format!("convolution/n{}q{}/{}", atlas.n, atlas.q, rel);

    // rel1: T0^2 = (q-2) T0 + (q-1)
    let lhs = atlas.mul_elements(&t0, &t0);
    let rhs = add(
        &scale(&t0, &(qr.clone() - rat(2))),
        &scale(&one, &(qr.clone() - rat(1))),
    );
    out.push(Assertion::new(
        tag("rel1"),
        "T0^2 = (q-2) T0 + (q-1)",
        lhs == rhs,
        "exact integer convolution",
    ));
    // rel2
    let mut ok = true;
    for t in &ti {
        let lhs = atlas.mul_elements(t, t);
        let rhs = add(&scale(t, &(qr.clone() - rat(1))), &scale(&one, &qr));
        if lhs != rhs {
            ok = false;
        }
    }
    out.push(Assertion::new(
        tag("rel2"),
        "Ti^2 = (q-1) Ti + q",
        ok,
        "exact integer convolution",
    ));
    // rel3: braid among T_i
    let mut ok = true;
    for i in 1..n.saturating_sub(1) {
        let a = &ti[i - 1];
        let b = &ti[i];
        let lhs = atlas.mul_elements(&atlas.mul_elements(a, b), a);
        let rhs = atlas.mul_elements(&atlas.mul_elements(b, a), b);
        if lhs != rhs {
            ok = false;
        }
    }
    out.push(Assertion::new(
        tag("rel3"),
        "Ti T(i+1) Ti = T(i+1) Ti T(i+1)",
        ok,
        "exact integer convolution",
    ));
    // rel4: T0 T1 T0 T1 = (q-1)(T1 T0 T1 + T1 T0) - T0 T1 T0
    if n >= 2 {
        let t1 = &ti[0];
        let t0t1 = atlas.mul_elements(&t0, t1);
        let t1t0 = atlas.mul_elements(t1, &t0);
        let t1t0t1 = atlas.mul_elements(&t1t0, t1);
        let t0t1t0 = atlas.mul_elements(&t0t1, &t0);
        let lhs4 = atlas.mul_elements(&t0t1t0, t1);
        let rhs4 = add(
            &scale(&add(&t1t0t1, &t1t0), &(qr.clone() - rat(1))),
            &scale(&t0t1t0, &rat(-1)),
        );
        out.push(Assertion::new(
            tag("rel4"),
            "T0 T1 T0 T1 = (q-1)(T1 T0 T1 + T1 T0) - T0 T1 T0",
            lhs4 == rhs4,
            "exact integer convolution",
        ));
        let lhs5 = atlas.mul_elements(&t1t0t1, &t0);
        let rhs5 = add(
            &scale(&add(&t1t0t1, &t0t1), &(qr.clone() - rat(1))),
            &scale(&t0t1t0, &rat(-1)),
        );
        out.push(Assertion::new(
            tag("rel5"),
            "T1 T0 T1 T0 = (q-1)(T1 T0 T1 + T0 T1) - T0 T1 T0",
            lhs5 == rhs5,
            "exact integer convolution",
        ));
    }
    // rel6: commutation for distance >= 2, T0 included
    let mut ok = true;
    let gens: Vec<(usize, &ConvElement)> = std::iter::once((0usize, &t0))
        .chain(ti.iter().enumerate().map(|(i, t)| (i + 1, t)))
        .collect();
    for (i, a) in &gens {
        for (j, b) in &gens {
            if j <= i || j - i < 2 {
                continue;
            }
            if atlas.mul_elements(a, b) != atlas.mul_elements(b, a) {
                ok = false;
            }
        }
    }
    out.push(Assertion::new(
        tag("rel6"),
        "Ti Tj = Tj Ti for |i-j| >= 2",
        ok,
        "exact integer convolution",
    ));
    // identity behavior
    let mut ok = true;
    for j in 0..atlas.n_orbits() {
        let b = atlas.basis_element(j);
        if atlas.mul_elements(&one, &b) != b || atlas.mul_elements(&b, &one) != b {
            ok = false;
        }
    }
    out.push(Assertion::new(
        tag("identity"),
        "the empty-position orbit is a two-sided identity",
        ok,
        "checked on every basis element",
    ));
    // the zero-vector slice is closed under convolution: products of
    // empty-subset orbits stay supported on empty-subset orbits, so the
    // Iwahori-Hecke algebra embeds
    let mut ok = true;
    let hecke_orbits: Vec<usize> = (0..atlas.n_orbits())
        .filter(|&k| atlas.labels[k].beta == 0)
        .collect();
    for &i in &hecke_orbits {
        for &j in &hecke_orbits {
            let prod = atlas.mul_elements(&atlas.basis_element(i), &atlas.basis_element(j));
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() && atlas.labels[k].beta != 0 {
                    ok = false;
                }
            }
        }
    }
    out.push(Assertion::new(
        tag("hecke-subalgebra"),
        "empty-subset orbits form a subalgebra",
        ok,
        format!("{} x {} products", hecke_orbits.len(), hecke_orbits.len()),
    ));

    if check_generation {
        // words in the generators span the whole algebra
        let nn = atlas.n_orbits();
        let mut space = RowSpace::new(nn);
        space.insert(one.clone());
        let mut frontier = vec![one.clone()];
        let all_gens: Vec<ConvElement> = std::iter::once(t0.clone())
            .chain(ti.iter().cloned())
            .collect();
        while !frontier.is_empty() && space.rank() < nn {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &all_gens {
                    let y = atlas.mul_elements(x, g);
                    if space.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        out.push(Assertion::new(
            tag("generation"),
            "generator words span every orbit function",
            space.rank() == nn,
            format!("rank {} of {}", space.rank(), nn),
        ));
    }
    out
}

/// Exhaustive check of the involution on labels: swapping the two flags sends
/// the orbit (w, beta) to (w^{-1}, w(beta)).
pub fn verify_star(atlas: &OrbitAtlas) -> Vec<Assertion> {
    let nf = atlas.n_flags();
    let nv = atlas.n_vectors();
    let mut ok = true;
    let mut detail = String::new();
    for (k, label) in atlas.labels.iter().enumerate() {
        let state = atlas.representatives[k];
        let v = state % nv as u32;
        let fp = (state / nv as u32) % nf as u32;
        let f = state / (nv as u32 * nf as u32);
        let swapped = (fp as usize * nf + f as usize) * nv + v as usize;
        let got = atlas.state_label[swapped] as usize;
        let w = Permutation::from_images(label.w.clone());
        let winv = w.inverse();
        let mut beta_image = 0u32;
        for i in 1..=atlas.n {
            if label.beta & (1 << (i - 1)) != 0 {
                beta_image |= 1 << (w.apply(i) - 1);
            }
        }
        let expect = atlas
            .label_index(&winv, beta_image)
            .expect("image pair is valid");
        if got != expect {
            ok = false;
            detail = format!("orbit {} maps to {} instead of {}", k, got, expect);
        }
    }
    vec![Assertion::new(
        format!("convolution/n{}q{}/star", atlas.n, atlas.q),
        "flag swap sends (w, beta) to (w^{-1}, w(beta))",
        ok,
        if ok {
            format!("all {} orbits", atlas.n_orbits())
        } else {
            detail
        },
    )]
}

/// Compare regular-representation traces of seeded random generator words
/// between the convolution model and the specialized seminormal evaluation.
pub fn cross_validate(atlas: &OrbitAtlas, words: usize, seed: u64) -> Vec<Assertion> {
    use crate::context::AlgebraContext;
    use crate::wordalg::{AlgElement, Evaluator, Gen};
    let n = atlas.n;
    let ctx = AlgebraContext::mirabolic(n);
    let ev = Evaluator::new(ctx);
    let q0 = rat(atlas.q as i64);
    let dims: Vec<usize> = ev.reps.iter().map(|r| r.dim()).collect();

    let mut letters: Vec<Gen> = vec![Gen::E];
    for i in 1..n {
        letters.push(Gen::T(i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut detail = String::new();
    let qinv = Rat::one() / q0.clone();
    for widx in 0..words {
        let len = rng.gen_range(0..=8);
        let word: Vec<Gen> = (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        // convolution side: multiply out with e = q^{-1}(T0 + 1)
        let mut x = atlas.identity_element();
        for g in &word {
            x = match g {
                Gen::E => {
                    let xt0 = atlas.mul_by_orbit(&x, atlas.t0_index());
                    xt0.iter().zip(&x).map(|(a, b)| (a + b) * &qinv).collect()
                }
                Gen::T(i) => atlas.mul_by_orbit(&x, atlas.ti_index(*i)),
            };
        }
        let conv_trace = atlas.regular_trace(&x);
        // seminormal side: sum of dim * block trace at q
        let elem = AlgElement::from_word(ctx, word.clone());
        let blocks = ev.eval(&elem);
        let mut rep_trace = Rat::zero();
        for (d, block) in dims.iter().zip(&blocks.blocks) {
            let tr = block
                .trace()
                .specialize(&q0)
                .expect("semisimple specialization");
            rep_trace += rat(*d as i64) * tr;
        }
        if conv_trace != rep_trace {
            ok = false;
            detail = format!(
                "word #{} of length {}: {} vs {}",
                widx, len, conv_trace, rep_trace
            );
        }
    }
    vec![Assertion::new(
        format!("cross-validate/n{}q{}", atlas.n, atlas.q),
        "regular-representation traces agree between the two models",
        ok,
        if ok {
            format!("{} seeded words", words)
        } else {
            detail
        },
    )]
}

/// Interpolate each structure constant across atlases at several q and check
/// the interpolating polynomial has integer coefficients of degree < #points.
pub fn verify_polynomiality(atlases: &[&OrbitAtlas]) -> Vec<Assertion> {
    assert!(atlases.len() >= 2);
    let nn = atlases[0].n_orbits();
    let mut ok = atlases.iter().all(|a| a.n_orbits() == nn)
        && atlases.windows(2).all(|w| w[0].labels == w[1].labels);
    let points: Vec<Rat> = atlases.iter().map(|a| rat(a.q as i64)).collect();
    let mut max_degree = 0usize;
    if ok {
        'cells: for k in 0..nn {
            for i in 0..nn {
                for j in 0..nn {
                    let values: Vec<Rat> = atlases
                        .iter()
                        .map(|a| rat(a.constant(i, j, k) as i64))
                        .collect();
                    // Newton/Lagrange coefficients in the monomial basis
                    let coeffs = lagrange_coefficients(&points, &values);
                    for (deg, c) in coeffs.iter().enumerate() {
                        if !c.is_integer() {
                            ok = false;
                            break 'cells;
                        }
                        if !c.is_zero() {
                            max_degree = max_degree.max(deg);
                        }
                    }
                }
            }
        }
    }
    vec![Assertion::new(
        format!("convolution/n{}/polynomiality", atlases[0].n),
        "structure constants interpolate to integer polynomials in q",
        ok,
        format!(
            "degree <= {} across q in {:?}",
            max_degree,
            atlases.iter().map(|a| a.q).collect::<Vec<_>>()
        ),
    )]
}

/// Monomial coefficients of the unique interpolating polynomial.
fn lagrange_coefficients(points: &[Rat], values: &[Rat]) -> Vec<Rat> {
    let m = points.len();
    let mut coeffs = vec![Rat::zero(); m];
    for i in 0..m {
        // basis polynomial prod_{l != i} (x - x_l) / (x_i - x_l)
        let mut poly = vec![Rat::one()];
        let mut denom = Rat::one();
        for (l, xl) in points.iter().enumerate() {
            if l == i {
                continue;
            }
            let mut next = vec![Rat::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= xl * c;
            }
            poly = next;
            denom *= &points[i] - xl;
        }
        let w = &values[i] / &denom;
        for (d, c) in poly.iter().enumerate() {
            coeffs[d] += c * &w;
        }
    }
    coeffs
}

// ---------------------------------------------------------------------------
// Cache: a little-endian binary file per (n, q) plus a JSON sidecar.
// ---------------------------------------------------------------------------

const MAGIC: &[u8; 8] = b"MHATLS01";

pub fn cache_paths(dir: &Path, n: usize, q: u32) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("atlas_n{}_q{}.bin", n, q)),
        dir.join(format!("atlas_n{}_q{}.json", n, q)),
    )
}

#[derive(Serialize)]
struct Sidecar<'a> {
    version: u32,
    n: usize,
    q: u32,
    orbit_count: usize,
    flag_count: usize,
    labels: &'a [OrbitLabel],
}

pub fn save_atlas(atlas: &OrbitAtlas, dir: &Path) -> Result<(), ConvolutionError> {
    std::fs::create_dir_all(dir)?;
    let (bin_path, json_path) = cache_paths(dir, atlas.n, atlas.q);
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.extend_from_slice(&(atlas.n as u32).to_le_bytes());
    buf.extend_from_slice(&atlas.q.to_le_bytes());
    buf.extend_from_slice(&(atlas.n_orbits() as u32).to_le_bytes());
    buf.extend_from_slice(&(atlas.state_label.len() as u64).to_le_bytes());
    for label in &atlas.labels {
        for &im in &label.w {
            buf.push(im as u8);
        }
        buf.extend_from_slice(&label.beta.to_le_bytes());
    }
    for &rep in &atlas.representatives {
        buf.extend_from_slice(&rep.to_le_bytes());
    }
    for &s in &atlas.state_label {
        buf.extend_from_slice(&s.to_le_bytes());
    }
    let nn = atlas.n_orbits();
    let nonzeros: Vec<(u32, u32, u32, u32)> = (0..nn)
        .flat_map(|k| {
            let constants = &atlas.constants;
            (0..nn).flat_map(move |i| {
                (0..nn).filter_map(move |j| {
                    let c = constants[(k * nn + i) * nn + j];
                    (c != 0).then_some((i as u32, j as u32, k as u32, c))
                })
            })
        })
        .collect();
    buf.extend_from_slice(&(nonzeros.len() as u64).to_le_bytes());
    for (i, j, k, c) in nonzeros {
        buf.extend_from_slice(&i.to_le_bytes());
        buf.extend_from_slice(&j.to_le_bytes());
        buf.extend_from_slice(&k.to_le_bytes());
        buf.extend_from_slice(&c.to_le_bytes());
    }
    std::fs::File::create(&bin_path)?.write_all(&buf)?;
    let sidecar = Sidecar {
        version: CACHE_VERSION,
        n: atlas.n,
        q: atlas.q,
        orbit_count: atlas.n_orbits(),
        flag_count: atlas.n_flags(),
        labels: &atlas.labels,
    };
    std::fs::write(&json_path, serde_json::to_string_pretty(&sidecar).unwrap())?;
    Ok(())
}

/// Load a cached atlas. Returns Ok(None) when the cache is missing, stale, or
/// corrupt — callers rebuild in that case.
pub fn load_atlas(n: usize, q: u32, dir: &Path) -> Result<Option<OrbitAtlas>, ConvolutionError> {
    let (bin_path, _) = cache_paths(dir, n, q);
    let Ok(mut file) = std::fs::File::open(&bin_path) else {
        return Ok(None);
    };
    let mut buf = Vec::new();
    if file.read_to_end(&mut buf).is_err() {
        return Ok(None);
    }
    let parse = || -> Option<OrbitAtlas> {
        let mut pos = 0usize;
        let take = |pos: &mut usize, len: usize| -> Option<&[u8]> {
            let s = buf.get(*pos..*pos + len)?;
            *pos += len;
            Some(s)
        };
        if take(&mut pos, 8)? != MAGIC {
            return None;
        }
        let rd_u32 = |pos: &mut usize| -> Option<u32> {
            Some(u32::from_le_bytes(take(pos, 4)?.try_into().ok()?))
        };
        let rd_u64 = |pos: &mut usize| -> Option<u64> {
            Some(u64::from_le_bytes(take(pos, 8)?.try_into().ok()?))
        };
        if rd_u32(&mut pos)? != CACHE_VERSION {
            return None;
        }
        let file_n = rd_u32(&mut pos)? as usize;
        let file_q = rd_u32(&mut pos)?;
        if file_n != n || file_q != q {
            return None;
        }
        let nn = rd_u32(&mut pos)? as usize;
        let n_states = rd_u64(&mut pos)? as usize;
        let mut labels = Vec::with_capacity(nn);
        for _ in 0..nn {
            let w: Vec<usize> = take(&mut pos, n)?.iter().map(|&b| b as usize).collect();
            let beta = rd_u32(&mut pos)?;
            labels.push(OrbitLabel { w, beta });
        }
        let mut representatives = Vec::with_capacity(nn);
        for _ in 0..nn {
            representatives.push(rd_u32(&mut pos)?);
        }
        let mut state_label = Vec::with_capacity(n_states);
        for _ in 0..n_states {
            let b = take(&mut pos, 2)?;
            state_label.push(u16::from_le_bytes(b.try_into().ok()?));
        }
        let nz = rd_u64(&mut pos)? as usize;
        let mut constants = vec![0u32; nn * nn * nn];
        for _ in 0..nz {
            let i = rd_u32(&mut pos)? as usize;
            let j = rd_u32(&mut pos)? as usize;
            let k = rd_u32(&mut pos)? as usize;
            let c = rd_u32(&mut pos)?;
            *constants.get_mut((k * nn + i) * nn + j)? = c;
        }
        if pos != buf.len() {
            return None;
        }
        let gf = Gf::new(q).ok()?;
        let flags = enumerate_flags(n, q).ok()?;
        if flags.len() * flags.len() * (q as usize).pow(n as u32) != n_states {
            return None;
        }
        Some(OrbitAtlas {
            n,
            q,
            gf,
            flags,
            labels,
            state_label,
            representatives,
            constants,
        })
    };
    Ok(parse())
}

/// Load from cache or build and save.
pub fn load_or_build(
    n: usize,
    q: u32,
    dir: Option<&Path>,
) -> Result<(OrbitAtlas, bool), ConvolutionError> {
    if let Some(dir) = dir {
        if let Some(atlas) = load_atlas(n, q, dir)? {
            return Ok((atlas, true));
        }
    }
    let atlas = build_atlas(n, q)?;
    if let Some(dir) = dir {
        save_atlas(&atlas, dir)?;
    }
    Ok((atlas, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_arithmetic() {
        let gf = Gf::new(4).unwrap();
        assert_eq!(gf.mul(2, 2), 3);
        assert_eq!(gf.mul(2, 3), 1);
        assert_eq!(gf.mul(3, 3), 2);
        assert_eq!(gf.add(2, 3), 1);
        assert_eq!(gf.inv(2), 3);
        let g = gf.primitive();
        assert!(g == 2 || g == 3);
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_flags(3, 2).unwrap().len(), 21);
        assert_eq!(enumerate_flags(4, 2).unwrap().len(), 315);
        assert_eq!(enumerate_flags(2, 3).unwrap().len(), 4);
        assert_eq!(enumerate_flags(3, 3).unwrap().len(), 52);
        assert_eq!(enumerate_flags(3, 4).unwrap().len(), 105);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_flags(4, 3),
            Err(ConvolutionError::BudgetExceeded(_, _))
        ));
        assert!(matches!(
            enumerate_flags(5, 2),
            Err(ConvolutionError::BudgetExceeded(_, _))
        ));
    }

    #[test]
    fn relative_position_props() {
        let gf = Gf::new(2).unwrap();
        let flags = enumerate_flags(2, 2).unwrap();
        for f in &flags {
            assert_eq!(relative_position(&gf, 2, f, f), Permutation::identity(2));
            for g in &flags {
                let w = relative_position(&gf, 2, f, g);
                let wi = relative_position(&gf, 2, g, f);
                assert_eq!(w.inverse(), wi);
            }
        }
        // permuted standard flags realize their permutation
        for n in 2..=3usize {
            let gf = Gf::new(2).unwrap();
            let std_flag = Flag::from_permuted_basis(&gf, n, &Permutation::identity(n));
            for w in Permutation::all(n) {
                let fw = Flag::from_permuted_basis(&gf, n, &w);
                assert_eq!(relative_position(&gf, n, &std_flag, &fw), w);
            }
        }
    }

    #[test]
    fn orbit_counts() {
        for (n, q, expect) in [
            (1usize, 2u32, 2usize),
            (1, 3, 2),
            (1, 4, 2),
            (2, 2, 7),
            (2, 3, 7),
            (2, 4, 7),
            (3, 2, 34),
            (3, 3, 34),
            (3, 4, 34),
        ] {
            let atlas = build_atlas(n, q).unwrap();
            assert_eq!(atlas.n_orbits(), expect, "n={} q={}", n, q);
        }
    }

    #[test]
    fn n1_labels() {
        let atlas = build_atlas(1, 2).unwrap();
        assert_eq!(atlas.labels.len(), 2);
        assert_eq!(atlas.labels[0].beta, 0);
        assert_eq!(atlas.labels[1].beta, 1);
        // T0^2 = (q-2) T0 + (q-1): at q=2, T0^2 = 1
        let t0 = atlas.basis_element(1);
        let sq = atlas.mul_elements(&t0, &t0);
        assert_eq!(sq, atlas.identity_element());
    }

    #[test]
    fn identity_is_unit() {
        let atlas = build_atlas(2, 3).unwrap();
        for j in 0..atlas.n_orbits() {
            let b = atlas.basis_element(j);
            assert_eq!(atlas.mul_elements(&atlas.identity_element(), &b), b);
            assert_eq!(atlas.mul_elements(&b, &atlas.identity_element()), b);
        }
    }

    #[test]
    fn presentation_small() {
        for (n, q) in [(1usize, 2u32), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let atlas = build_atlas(n, q).unwrap();
            for a in verify_presentation(&atlas, true) {
                assert!(a.passed(), "{} at n={} q={}: {}", a.id, n, q, a.detail);
            }
        }
    }

    #[test]
    fn star_small() {
        for (n, q) in [(2usize, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)] {
            let atlas = build_atlas(n, q).unwrap();
            for a in verify_star(&atlas) {
                assert!(a.passed(), "{}: {}", a.id, a.detail);
            }
        }
    }

    #[test]
    fn cross_validation_small() {
        for (n, q) in [(2usize, 2u32), (2, 3), (3, 2)] {
            let atlas = build_atlas(n, q).unwrap();
            for a in cross_validate(&atlas, 25, 12345) {
                assert!(a.passed(), "{}: {}", a.id, a.detail);
            }
        }
    }

    #[test]
    fn polynomiality_n2() {
        let a2 = build_atlas(2, 2).unwrap();
        let a3 = build_atlas(2, 3).unwrap();
        let a4 = build_atlas(2, 4).unwrap();
        for a in verify_polynomiality(&[&a2, &a3, &a4]) {
            assert!(a.passed(), "{}: {}", a.id, a.detail);
        }
    }

    #[test]
    fn cache_roundtrip() {
        let dir = std::env::temp_dir().join("mirhecke-test-cache");
        let _ = std::fs::remove_dir_all(&dir);
        let atlas = build_atlas(2, 2).unwrap();
        save_atlas(&atlas, &dir).unwrap();
        let loaded = load_atlas(2, 2, &dir).unwrap().expect("cache present");
        assert_eq!(loaded.labels, atlas.labels);
        assert_eq!(loaded.state_label, atlas.state_label);
        assert_eq!(loaded.constants, atlas.constants);
        // corrupt cache falls back to None
        let (bin, _) = cache_paths(&dir, 2, 2);
        let original = std::fs::read(&bin).unwrap();
        std::fs::write(&bin, b"garbage").unwrap();
        assert!(load_atlas(2, 2, &dir).unwrap().is_none());
        // a bumped version stamp invalidates the file too
        let mut stale = original;
        stale[8] = stale[8].wrapping_add(1);
        std::fs::write(&bin, &stale).unwrap();
        assert!(load_atlas(2, 2, &dir).unwrap().is_none());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn field_scope_guard() {
        assert!(matches!(
            enumerate_flags(2, 5),
            Err(ConvolutionError::BadField(5))
        ));
    }

    #[test]
    fn lagrange_basics() {
        // constants 1, q, q^2 through x = 2,3,4
        let pts = vec![rat(2), rat(3), rat(4)];
        let vals = vec![rat(4), rat(9), rat(16)];
        let coeffs = lagrange_coefficients(&pts, &vals);
        assert_eq!(coeffs, vec![rat(0), rat(0), rat(1)]);
    }
}
