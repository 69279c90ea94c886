//! Formal algebra elements as Q(q)-linear combinations of words in the
//! generators {e, T_1, ..., T_{n-1}}, with equality decided by a faithful
//! evaluation: an element maps to its block images under every irreducible of
//! the context, and semisimplicity makes that map injective. There is no
//! rewriting system here; the block coordinates are the normal form.
//!
//! T_0 is not a letter: it abbreviates q*e - 1 and is expanded at parse time.

use crate::combinatorics::{Bipartition, Partition, Permutation};
use crate::context::AlgebraContext;
use crate::linalg::Matrix;
use crate::report::Assertion;
use crate::scalar::{Scalar, ScalarError};
use crate::seminormal::{all_irreps, Rep};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordAlgError {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("letter {0} not available in context {1}")]
    BadLetter(String, String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("scalar error: {0}")]
    Scalar(#[from] ScalarError),
    #[error("no bipartition realizes the spectrum: {0}")]
    BadSpectrum(String),
}

/// A generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// X in the cyclotomic context, e in the mirabolic quotient.
    E,
    /// T_i for 1 <= i <= n-1.
    T(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E => write!(f, "e"),
            Gen::T(i) => write!(f, "T{}", i),
        }
    }
}

pub type Word = Vec<Gen>;

/// A formal linear combination of words; no zero coefficients are stored and
/// the empty word is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElement {
    pub context: AlgebraContext,
    terms: BTreeMap<Word, Scalar>,
}

impl AlgElement {
    pub fn zero(context: AlgebraContext) -> Self {
        AlgElement {
            context,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(context: AlgebraContext) -> Self {
        AlgElement::from_word(context, Vec::new())
    }

    pub fn from_word(context: AlgebraContext, word: Word) -> Self {
        Self::validate_word(context, &word).expect("letters admissible in context");
        let mut terms = BTreeMap::new();
        terms.insert(word, Scalar::one());
        AlgElement { context, terms }
    }

    fn validate_word(context: AlgebraContext, word: &Word) -> Result<(), WordAlgError> {
        for g in word {
            match g {
                Gen::E if !context.has_e() => {
                    return Err(WordAlgError::BadLetter("e".into(), context.to_string()))
                }
                Gen::T(i) if *i == 0 || *i >= context.n => {
                    return Err(WordAlgError::BadLetter(
                        format!("T{}", i),
                        context.to_string(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn gen(context: AlgebraContext, g: Gen) -> Self {
        AlgElement::from_word(context, vec![g])
    }

    pub fn e(context: AlgebraContext) -> Self {
        AlgElement::gen(context, Gen::E)
    }

    pub fn t(context: AlgebraContext, i: usize) -> Self {
        AlgElement::gen(context, Gen::T(i))
    }

    /// The abbreviation T_0 = q e - 1.
    pub fn t0(context: AlgebraContext) -> Self {
        AlgElement::e(context)
            .scale(&Scalar::q())
            .sub(&AlgElement::one(context))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgElement::zero(self.context);
        }
        AlgElement {
            context: self.context,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.context, other.context, "context mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Bilinear word concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.context, other.context, "context mismatch");
        let mut out = AlgElement::zero(self.context);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul(c2));
            }
        }
        out
    }

    /// The anti-involution: reverse every word.
    pub fn star(&self) -> Self {
        let mut out = AlgElement::zero(self.context);
        for (w, c) in &self.terms {
            let mut r = w.clone();
            r.reverse();
            out.add_term(r, c.clone());
        }
        out
    }

    /// The involutive substitution X -> 1 - X, T_i -> (q-1) - T_i, extended
    /// multiplicatively over words and linearly over sums.
    pub fn alpha(&self) -> Self {
        let one = AlgElement::one(self.context);
        let qm1 = Scalar::q().sub(&Scalar::one());
        let image = |g: &Gen| -> AlgElement {
            match g {
                Gen::E => one.sub(&AlgElement::e(self.context)),
                Gen::T(i) => one.scale(&qm1).sub(&AlgElement::t(self.context, *i)),
            }
        };
        let mut out = AlgElement::zero(self.context);
        for (w, c) in &self.terms {
            let prod = w
                .iter()
                .fold(AlgElement::one(self.context), |acc, g| acc.mul(&image(g)));
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Product of T-letters along a reduced word of the permutation; well
    /// defined by the braid relations.
    pub fn t_word(context: AlgebraContext, w: &Permutation) -> Self {
        let word: Word = w.reduced_word().into_iter().map(Gen::T).collect();
        AlgElement::from_word(context, word)
    }

    /// The Jucys-Murphy element L_i = q^{1-i} T_{i-1} ... T_1 e T_1 ... T_{i-1}.
    pub fn jm(context: AlgebraContext, i: usize) -> Self {
        assert!(i >= 1 && i <= context.n);
        let mut word: Word = Vec::with_capacity(2 * i - 1);
        for j in (1..i).rev() {
            word.push(Gen::T(j));
        }
        word.push(Gen::E);
        for j in 1..i {
            word.push(Gen::T(j));
        }
        AlgElement::from_word(context, word).scale(&Scalar::q_pow(1 - i as i64))
    }

    /// Elementary symmetric polynomial e_j(L_1..L_n), each product taken in
    /// increasing index order.
    pub fn jm_elementary(context: AlgebraContext, j: usize) -> Self {
        let n = context.n;
        assert!(j >= 1 && j <= n);
        let mut out = AlgElement::zero(context);
        let mut subset: Vec<usize> = (1..=j).collect();
        loop {
            let prod = subset.iter().fold(AlgElement::one(context), |acc, &i| {
                acc.mul(&AlgElement::jm(context, i))
            });
            out = out.add(&prod);
            let mut i = j;
            while i > 0 && subset[i - 1] == n - (j - i) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            subset[i - 1] += 1;
            for l in i..j {
                subset[l] = subset[l - 1] + 1;
            }
        }
        out
    }

    /// Power sum p_j(L_1..L_n).
    pub fn jm_power_sum(context: AlgebraContext, j: usize) -> Self {
        let mut out = AlgElement::zero(context);
        for i in 1..=context.n {
            let l = AlgElement::jm(context, i);
            let mut p = AlgElement::one(context);
            for _ in 0..j {
                p = p.mul(&l);
            }
            out = out.add(&p);
        }
        out
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let word_str = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let (sign, mag) = match c.as_constant() {
                Some(k) if k == num::BigRational::from_integer(1.into()) => {
                    ("+".to_string(), word_str.clone())
                }
                Some(k) if k == num::BigRational::from_integer((-1).into()) => {
                    ("-".to_string(), word_str.clone())
                }
                _ => ("+".to_string(), format!("({})*{}", c, word_str)),
            };
            if first {
                if sign == "-" {
                    write!(f, "-{}", mag)?;
                } else {
                    write!(f, "{}", mag)?;
                }
                first = false;
            } else {
                write!(f, " {} {}", sign, mag)?;
            }
        }
        Ok(())
    }
}

/// Parse an element from the word syntax: terms joined by + and -, each an
/// optional coefficient (integer, q-monomial, or a parenthesized scalar)
/// followed by '*' and a word of letters "e", "T1", ..; "T0" expands to
/// q*e - 1 and "1" denotes the identity.
pub fn parse_element(context: AlgebraContext, input: &str) -> Result<AlgElement, WordAlgError> {
    let mut out = AlgElement::zero(context);
    let mut chars = input.chars().peekable();
    let mut sign = 1i64;
    let mut any = false;
    loop {
        while matches!(chars.peek(), Some(' ') | Some('\t')) {
            chars.next();
        }
        match chars.peek() {
            None => break,
            Some('+') => {
                chars.next();
                sign = 1;
                continue;
            }
            Some('-') => {
                chars.next();
                sign = -1;
                continue;
            }
            _ => {}
        }
        // one term: optional coefficient then word
        let mut coeff = Scalar::from_int(sign);
        sign = 1;
        // coefficient?
        match chars.peek() {
            Some('(') => {
                // parenthesized scalar, possibly followed by /( ... )
                let mut depth = 0usize;
                let mut buf = String::new();
                for c in chars.by_ref() {
                    buf.push(c);
                    if c == '(' {
                        depth += 1;
                    } else if c == ')' {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                }
                if chars.peek() == Some(&'/') {
                    buf.push('/');
                    chars.next();
                    if chars.peek() != Some(&'(') {
                        return Err(WordAlgError::Parse("expected ( after /".into()));
                    }
                    let mut depth = 0usize;
                    for c in chars.by_ref() {
                        buf.push(c);
                        if c == '(' {
                            depth += 1;
                        } else if c == ')' {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                    }
                }
                // `(poly)` and `(num)/(den)` parse directly; a doubly wrapped
                // `((num)/(den))` needs one layer peeled off.
                let inner: Scalar = buf
                    .parse()
                    .or_else(|_| {
                        if buf.len() >= 2 {
                            buf[1..buf.len() - 1].parse::<Scalar>()
                        } else {
                            buf.parse::<Scalar>()
                        }
                    })
                    .map_err(WordAlgError::Scalar)?;
                coeff = coeff.mul(&inner);
                if chars.peek() == Some(&'*') {
                    chars.next();
                }
            }
            Some(c) if c.is_ascii_digit() || *c == 'q' => {
                let mut buf = String::new();
                while let Some(&c) = chars.peek() {
                    let part_of_scalar = c.is_ascii_digit()
                        || c == 'q'
                        || c == '^'
                        || c == '/'
                        || (c == '-' && buf.ends_with('^'));
                    if !part_of_scalar {
                        break;
                    }
                    buf.push(c);
                    chars.next();
                }
                let v: Scalar = buf.parse().map_err(WordAlgError::Scalar)?;
                coeff = coeff.mul(&v);
                if chars.peek() == Some(&'*') {
                    chars.next();
                }
            }
            _ => {}
        }
        // word
        let mut factors: Vec<AlgElement> = Vec::new();
        loop {
            while matches!(chars.peek(), Some(' ') | Some('\t')) {
                chars.next();
            }
            match chars.peek() {
                Some('e') => {
                    chars.next();
                    if !context.has_e() {
                        return Err(WordAlgError::BadLetter("e".into(), context.to_string()));
                    }
                    factors.push(AlgElement::e(context));
                }
                Some('T') => {
                    chars.next();
                    let mut digits = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let i: usize = digits
                        .parse()
                        .map_err(|_| WordAlgError::Parse("bad T index".into()))?;
                    if i == 0 {
                        factors.push(AlgElement::t0(context));
                    } else {
                        if i >= context.n {
                            return Err(WordAlgError::BadLetter(
                                format!("T{}", i),
                                context.to_string(),
                            ));
                        }
                        factors.push(AlgElement::t(context, i));
                    }
                }
                Some('1') => {
                    chars.next();
                    factors.push(AlgElement::one(context));
                }
                _ => break,
            }
        }
        let term = factors
            .into_iter()
            .fold(AlgElement::one(context), |acc, f| acc.mul(&f));
        out = out.add(&term.scale(&coeff));
        any = true;
    }
    if !any {
        return Err(WordAlgError::Parse("empty input".into()));
    }
    Ok(out)
}

/// Block images of an element under every irreducible of the context.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalCoord {
    pub blocks: Vec<Matrix<Scalar>>,
}

impl EvalCoord {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero_matrix())
    }

    /// Flatten all block entries into one coordinate vector.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.entries().iter().cloned())
            .collect()
    }
}

/// Evaluation context: the cached irreducibles of one algebra.
pub struct Evaluator {
    pub context: AlgebraContext,
    pub reps: Vec<Rep>,
}

impl Evaluator {
    pub fn new(context: AlgebraContext) -> Self {
        Evaluator {
            context,
            reps: all_irreps(context),
        }
    }

    pub fn labels(&self) -> Vec<Bipartition> {
        self.reps.iter().map(|r| r.label.clone()).collect()
    }

    fn gen_matrix<'a>(&self, rep: &'a Rep, g: &Gen) -> &'a Matrix<Scalar> {
        match g {
            Gen::E => rep.e_mat(),
            Gen::T(i) => rep.t_mat(*i),
        }
    }

    pub fn eval(&self, a: &AlgElement) -> EvalCoord {
        assert_eq!(a.context, self.context, "context mismatch");
        let blocks = self
            .reps
            .iter()
            .map(|rep| {
                let dim = rep.dim();
                let mut acc = Matrix::<Scalar>::zero(dim, dim);
                for (w, c) in a.terms() {
                    let mut img = Matrix::<Scalar>::identity(dim);
                    for g in w {
                        img = img.mul(self.gen_matrix(rep, g));
                    }
                    acc = acc.add(&img.scale(c));
                }
                acc
            })
            .collect();
        EvalCoord { blocks }
    }

    /// Genuine algebra equality via faithfulness of the sum of irreducibles.
    pub fn equals(&self, a: &AlgElement, b: &AlgElement) -> bool {
        self.eval(&a.sub(b)).is_zero()
    }

    pub fn is_zero(&self, a: &AlgElement) -> bool {
        self.eval(a).is_zero()
    }
}

/// The five central idempotents of the cyclotomic algebra at n = 2, paired
/// with their labels.
pub fn idempotents_h210() -> Vec<(Bipartition, AlgElement)> {
    let ctx = AlgebraContext::cyclotomic(2);
    let parse = |s: &str| parse_element(ctx, s).expect("well-formed idempotent formula");
    let bip = |a: &[usize], b: &[usize]| {
        Bipartition::new(
            Partition::new(a.to_vec()).unwrap(),
            Partition::new(b.to_vec()).unwrap(),
        )
    };
    vec![
        (
            bip(&[2], &[]),
            parse("(q^-1)*T1 e T1 e + (q^-1)*e T1 e").scale(
                &Scalar::one()
                    .div(&"q + 1".parse::<Scalar>().unwrap())
                    .unwrap(),
            ),
        ),
        (
            bip(&[1, 1], &[]),
            parse("T1 e T1 e - q*e T1 e").scale(
                &Scalar::one()
                    .div(&"q + 1".parse::<Scalar>().unwrap())
                    .unwrap(),
            ),
        ),
        (
            bip(&[1], &[1]),
            parse("q*e + T1 e T1 + (q - 1)*e T1 e - 2*T1 e T1 e").scale(&Scalar::q_pow(-1)),
        ),
        (
            bip(&[], &[2]),
            parse("1 - e + T1 - e T1 - T1 e + e T1 e - T1 e T1 + e T1 e T1").scale(
                &Scalar::one()
                    .div(&"q + 1".parse::<Scalar>().unwrap())
                    .unwrap(),
            ),
        ),
        (
            bip(&[], &[1, 1]),
            parse("q - q*e - T1 + e T1 + T1 e - e T1 e - (q^-1)*T1 e T1 + (q^-1)*e T1 e T1").scale(
                &Scalar::one()
                    .div(&"q + 1".parse::<Scalar>().unwrap())
                    .unwrap(),
            ),
        ),
    ]
}

/// Exact verification that the five formulas are orthogonal central
/// idempotents summing to 1, each projecting onto its own block.
pub fn verify_idempotents() -> Vec<Assertion> {
    let ctx = AlgebraContext::cyclotomic(2);
    let ev = Evaluator::new(ctx);
    let ys = idempotents_h210();
    let mut out = Vec::new();
    for (label, y) in &ys {
        out.push(Assertion::new(
            format!("idempotents/{}/square", label),
            "y^2 = y",
            ev.equals(&y.mul(y), y),
            "exact evaluation over Q(q)",
        ));
        let blocks = ev.eval(y);
        let block_ok = ev.labels().iter().zip(&blocks.blocks).all(|(l, b)| {
            if l == label {
                *b == Matrix::identity(b.rows())
            } else {
                b.is_zero_matrix()
            }
        });
        out.push(Assertion::new(
            format!("idempotents/{}/projection", label),
            "identity on its own block, zero elsewhere",
            block_ok,
            "block decomposition",
        ));
        for (other_label, z) in &ys {
            if other_label != label {
                out.push(Assertion::new(
                    format!("idempotents/{}x{}/orthogonal", label, other_label),
                    "pairwise products vanish",
                    ev.is_zero(&y.mul(z)),
                    "exact evaluation",
                ));
            }
        }
        let x = AlgElement::e(ctx);
        let t1 = AlgElement::t(ctx, 1);
        out.push(Assertion::new(
            format!("idempotents/{}/central", label),
            "commutes with X and T1",
            ev.equals(&y.mul(&x), &x.mul(y)) && ev.equals(&y.mul(&t1), &t1.mul(y)),
            "exact evaluation",
        ));
    }
    let sum = ys
        .iter()
        .fold(AlgElement::zero(ctx), |acc, (_, y)| acc.add(y));
    out.push(Assertion::new(
        "idempotents/sum",
        "sum of the five idempotents is 1",
        ev.equals(&sum, &AlgElement::one(ctx)),
        "exact evaluation",
    ));
    out
}

/// Verify the alpha substitution: an involutive automorphism of the
/// cyclotomic algebra at n = 2 that swaps two pairs of idempotents.
pub fn verify_alpha() -> Vec<Assertion> {
    let ctx = AlgebraContext::cyclotomic(2);
    let ev = Evaluator::new(ctx);
    let x = AlgElement::e(ctx);
    let t1 = AlgElement::t(ctx, 1);
    let mut out = Vec::new();

    let ax = x.alpha();
    let at = t1.alpha();
    out.push(Assertion::new(
        "alpha/x-quadratic",
        "alpha(X)^2 = alpha(X)",
        ev.equals(&ax.mul(&ax), &ax),
        "exact evaluation",
    ));
    out.push(Assertion::new(
        "alpha/t-quadratic",
        "alpha(T1)^2 = (q-1) alpha(T1) + q",
        ev.equals(
            &at.mul(&at),
            &at.scale(&Scalar::q().sub(&Scalar::one()))
                .add(&AlgElement::one(ctx).scale(&Scalar::q())),
        ),
        "exact evaluation",
    ));
    let lhs = x.mul(&t1).mul(&x).mul(&t1);
    let rhs = t1.mul(&x).mul(&t1).mul(&x);
    out.push(Assertion::new(
        "alpha/braid-preserved",
        "alpha(X T1 X T1) = alpha(T1 X T1 X)",
        ev.equals(&lhs.alpha(), &rhs.alpha()),
        "the direct expansion of the substituted product",
    ));
    out.push(Assertion::new(
        "alpha/involution",
        "alpha(alpha(a)) = a on X T1 X and T1 X T1",
        {
            let w1 = x.mul(&t1).mul(&x);
            let w2 = t1.mul(&x).mul(&t1);
            ev.equals(&w1.alpha().alpha(), &w1) && ev.equals(&w2.alpha().alpha(), &w2)
        },
        "exact evaluation",
    ));
    let ys = idempotents_h210();
    let find = |a: &[usize], b: &[usize]| -> AlgElement {
        let target = Bipartition::new(
            Partition::new(a.to_vec()).unwrap(),
            Partition::new(b.to_vec()).unwrap(),
        );
        ys.iter()
            .find(|(l, _)| *l == target)
            .map(|(_, y)| y.clone())
            .expect("label present")
    };
    out.push(Assertion::new(
        "alpha/idempotent-swap-1",
        "alpha(y_(empty,2)) = y_(11,empty)",
        ev.equals(&find(&[], &[2]).alpha(), &find(&[1, 1], &[])),
        "exact evaluation",
    ));
    out.push(Assertion::new(
        "alpha/idempotent-swap-2",
        "alpha(y_(empty,11)) = y_(2,empty)",
        ev.equals(&find(&[], &[1, 1]).alpha(), &find(&[2], &[])),
        "exact evaluation",
    ));
    out
}

/// Verify the center description: elementary symmetric polynomials in the JM
/// elements act as scalars on every irreducible, the scalar vectors separate
/// the labels, and they commute with the generators.
pub fn center_check(n: usize) -> Vec<Assertion> {
    let ctx = AlgebraContext::mirabolic(n);
    let ev = Evaluator::new(ctx);
    let mut out = Vec::new();
    let mut scalar_vectors: Vec<(Bipartition, Vec<Scalar>)> = Vec::new();
    for (label, rep) in ev.labels().iter().zip(&ev.reps) {
        let mut vector = Vec::new();
        let mut all_scalar = true;
        for j in 1..=n {
            let ej = AlgElement::jm_elementary(ctx, j);
            let blocks = ev.eval(&ej);
            let idx = ev.labels().iter().position(|l| l == label).unwrap();
            match blocks.blocks[idx].as_scalar_multiple_of_identity() {
                Some(c) => vector.push(c),
                None => {
                    all_scalar = false;
                    vector.push(Scalar::zero());
                }
            }
        }
        out.push(Assertion::new(
            format!("center/{}/scalar-action", label),
            "elementary symmetric JM polynomials act by scalars",
            all_scalar,
            format!("dimension {}", rep.dim()),
        ));
        scalar_vectors.push((label.clone(), vector));
    }
    let mut distinct = true;
    for i in 0..scalar_vectors.len() {
        for j in i + 1..scalar_vectors.len() {
            if scalar_vectors[i].1 == scalar_vectors[j].1 {
                distinct = false;
            }
        }
    }
    out.push(Assertion::new(
        format!("center/n{}/separation", n),
        "scalar vectors distinguish the irreducibles",
        distinct,
        format!("{} labels", scalar_vectors.len()),
    ));
    // commutation with generators, on e_1, e_2 and power sums p_1, p_2
    let mut gens = vec![AlgElement::e(ctx)];
    for i in 1..n {
        gens.push(AlgElement::t(ctx, i));
    }
    let mut sym_elems = vec![AlgElement::jm_elementary(ctx, 1)];
    if n >= 2 {
        sym_elems.push(AlgElement::jm_elementary(ctx, 2));
    }
    sym_elems.push(AlgElement::jm_power_sum(ctx, 1));
    sym_elems.push(AlgElement::jm_power_sum(ctx, 2));
    let commutes = sym_elems
        .iter()
        .all(|p| gens.iter().all(|g| ev.equals(&g.mul(p), &p.mul(g))));
    out.push(Assertion::new(
        format!("center/n{}/commutation", n),
        "symmetric JM polynomials commute with e and all Ti",
        commutes,
        "e1, e2, p1, p2 against every generator",
    ));
    out
}

/// Invert the center separation argument: from the multiset of JM eigenvalues
/// recover the unique label (lambda, 1^m) with m the multiplicity of 0 and
/// lambda the partition with d_j boxes on diagonal j.
pub fn recover_bipartition_from_spectrum(spectrum: &[Scalar]) -> Result<Bipartition, WordAlgError> {
    let n = spectrum.len();
    let mut zeros = 0usize;
    let mut diag_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for v in spectrum {
        if v.is_zero() {
            zeros += 1;
            continue;
        }
        let mono = v.num().as_monomial();
        let den_one = v
            .den()
            .as_monomial()
            .map(|(e, c)| e == 0 && c.clone() == num::BigRational::from_integer(1.into()));
        match (mono, den_one) {
            (Some((e, c)), Some(true)) if c.clone() == num::BigRational::from_integer(1.into()) => {
                *diag_counts.entry(e).or_insert(0) += 1;
            }
            _ => {
                return Err(WordAlgError::BadSpectrum(format!(
                    "eigenvalue {} is not 0 or a power of q",
                    v
                )))
            }
        }
    }
    // lambda_i = i + max { j : d_j - min(0, j) >= i }, rows while they exist
    let mut parts = Vec::new();
    for i in 1..=n {
        let best = diag_counts
            .iter()
            .filter(|(&j, &d)| (d as i64) - j.min(0) >= i as i64)
            .map(|(&j, _)| j)
            .max();
        match best {
            Some(j) if j + i as i64 >= 1 => parts.push((j + i as i64) as usize),
            _ => break,
        }
    }
    let lambda = Partition::new(parts)
        .map_err(|_| WordAlgError::BadSpectrum("diagonal counts are not a partition".into()))?;
    // consistency: recomputed diagonal counts must match exactly
    let all_j: Vec<i64> = diag_counts.keys().copied().collect();
    for j in all_j {
        if lambda.diagonal_count(j) != diag_counts[&j] {
            return Err(WordAlgError::BadSpectrum(format!(
                "no partition realizes the diagonal counts (mismatch at {})",
                j
            )));
        }
    }
    if lambda.size() + zeros != n {
        return Err(WordAlgError::BadSpectrum("sizes do not add up to n".into()));
    }
    let column = if zeros > 0 {
        Partition::new(vec![1; zeros]).unwrap()
    } else {
        Partition::empty()
    };
    Ok(Bipartition::new(lambda, column))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn ctx2() -> AlgebraContext {
        AlgebraContext::mirabolic(2)
    }

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn identity_multiplication() {
        let ctx = ctx2();
        let a = parse_element(ctx, "e T1 - 2*T1").unwrap();
        assert_eq!(AlgElement::one(ctx).mul(&a), a);
    }

    #[test]
    fn e_is_idempotent_under_eval() {
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let e = AlgElement::e(ctx);
        assert!(ev.equals(&e.mul(&e), &e));
        assert!(!ev.equals(&e, &AlgElement::one(ctx)));
    }

    #[test]
    fn t0_quadratic() {
        // (q e - 1)^2 = (q-2)(q e - 1) + (q-1)
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let t0 = AlgElement::t0(ctx);
        let lhs = t0.mul(&t0);
        let rhs = t0
            .scale(&s("q - 2"))
            .add(&AlgElement::one(ctx).scale(&s("q - 1")));
        assert!(ev.equals(&lhs, &rhs));
    }

    #[test]
    fn eval_blocks_of_e() {
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let blocks = ev.eval(&AlgElement::e(ctx));
        // labels (2,-),(11,-),(1,1),(-,11): e acts as 1, 1, diag(1,0), 0
        assert_eq!(blocks.blocks[0], Matrix::identity(1));
        assert_eq!(blocks.blocks[1], Matrix::identity(1));
        assert!(blocks.blocks[2].is_diagonal());
        assert_eq!(*blocks.blocks[2].get(0, 0), Scalar::one());
        assert_eq!(*blocks.blocks[2].get(1, 1), Scalar::zero());
        assert!(blocks.blocks[3].is_zero_matrix());
    }

    #[test]
    fn nrel7_via_equals() {
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let lhs = parse_element(ctx, "e T1 e T1").unwrap();
        let rhs = parse_element(ctx, "T1 e T1 - e T1 e + T1 e + e T1 + e - T1 - 1").unwrap();
        assert!(ev.equals(&lhs, &rhs));
    }

    #[test]
    fn cyclotomic_braid_e() {
        let ctx = AlgebraContext::cyclotomic(2);
        let ev = Evaluator::new(ctx);
        let lhs = parse_element(ctx, "e T1 e T1").unwrap();
        let rhs = parse_element(ctx, "T1 e T1 e").unwrap();
        assert!(ev.equals(&lhs, &rhs));
    }

    #[test]
    fn star_behaviour() {
        let ctx = ctx2();
        let a = parse_element(ctx, "e T1").unwrap();
        assert_eq!(a.star(), parse_element(ctx, "T1 e").unwrap());
        let b = parse_element(ctx, "3*e T1 e T1 - (q - 1)*T1").unwrap();
        assert_eq!(b.star().star(), b);
    }

    #[test]
    fn star_antimultiplicative_random() {
        let ctx = AlgebraContext::mirabolic(3);
        let ev = Evaluator::new(ctx);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(90210);
        let letters = [Gen::E, Gen::T(1), Gen::T(2)];
        for _ in 0..100 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| -> AlgElement {
                let len = rng.gen_range(0..=8);
                let w: Word = (0..len)
                    .map(|_| letters[rng.gen_range(0..letters.len())])
                    .collect();
                AlgElement::from_word(ctx, w)
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            assert!(ev.equals(&a.mul(&b).star(), &b.star().mul(&a.star())));
        }
    }

    #[test]
    fn jm_elements() {
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        assert_eq!(AlgElement::jm(ctx, 1), AlgElement::e(ctx));
        // L1 L2 agrees with q^{-1} T1 e T1 e
        let l1l2 = AlgElement::jm(ctx, 1).mul(&AlgElement::jm(ctx, 2));
        let rhs = parse_element(ctx, "(q^-1)*T1 e T1 e").unwrap();
        assert!(ev.equals(&l1l2, &rhs));
    }

    #[test]
    fn star_swaps_the_mixed_relations() {
        // the reversal of one four-letter relation side is the other one
        let ctx = ctx2();
        let lhs4 = parse_element(ctx, "T0 T1 T0 T1").unwrap();
        let lhs5 = parse_element(ctx, "T1 T0 T1 T0").unwrap();
        assert_eq!(lhs4.star(), lhs5);
    }

    #[test]
    fn jm_commute() {
        for n in 2..=4usize {
            let ctx = AlgebraContext::mirabolic(n);
            let ev = Evaluator::new(ctx);
            for i in 1..=n {
                for j in i + 1..=n {
                    let a = AlgElement::jm(ctx, i);
                    let b = AlgElement::jm(ctx, j);
                    assert!(
                        ev.equals(&a.mul(&b), &b.mul(&a)),
                        "L{} L{} at n={}",
                        i,
                        j,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn idempotent_suite_passes() {
        for a in verify_idempotents() {
            assert!(a.passed(), "{}", a.id);
        }
    }

    #[test]
    fn alpha_suite_passes() {
        for a in verify_alpha() {
            assert!(a.passed(), "{}", a.id);
        }
    }

    #[test]
    fn center_small() {
        for n in 1..=4usize {
            for a in center_check(n) {
                assert!(a.passed(), "{}", a.id);
            }
        }
    }

    #[test]
    fn center_e1_value() {
        // e1(L1,L2) acts on the label (2,-) by 1 + q (contents 0 and 1)
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let e1 = AlgElement::jm_elementary(ctx, 1);
        let blocks = ev.eval(&e1);
        assert_eq!(
            blocks.blocks[0].as_scalar_multiple_of_identity().unwrap(),
            s("q + 1")
        );
    }

    #[test]
    fn top_jm_product_vanishes_with_column() {
        // e_n(L_1..L_n) is 0 on any label with nonempty column part
        let ctx = AlgebraContext::mirabolic(3);
        let ev = Evaluator::new(ctx);
        let en = AlgElement::jm_elementary(ctx, 3);
        let blocks = ev.eval(&en);
        for (label, block) in ev.labels().iter().zip(&blocks.blocks) {
            if !label.second.is_empty() {
                assert!(block.is_zero_matrix(), "label {}", label);
            }
        }
    }

    #[test]
    fn spectrum_recovery() {
        let zeros = vec![Scalar::zero(), Scalar::zero()];
        let got = recover_bipartition_from_spectrum(&zeros).unwrap();
        assert_eq!(got.to_string(), "[[],[1,1]]");

        let s211 = vec![
            Scalar::one(),
            Scalar::q_pow(1),
            Scalar::q_pow(-1),
            Scalar::zero(),
        ];
        let got = recover_bipartition_from_spectrum(&s211).unwrap();
        assert_eq!(got.to_string(), "[[2,1],[1]]");

        let row: Vec<Scalar> = (0..4).map(Scalar::q_pow).collect();
        let got = recover_bipartition_from_spectrum(&row).unwrap();
        assert_eq!(got.to_string(), "[[4],[]]");
    }

    #[test]
    fn spectrum_roundtrip() {
        use crate::combinatorics::superstandard;
        for n in 1..=5usize {
            let ctx = AlgebraContext::mirabolic(n);
            for label in ctx.labels() {
                let t = superstandard(&label);
                let spec: Vec<Scalar> = (1..=n)
                    .map(|i| {
                        if t.epsilon(i) {
                            Scalar::q_pow(t.content(i))
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect();
                let got = recover_bipartition_from_spectrum(&spec).unwrap();
                assert_eq!(got, label);
            }
        }
    }

    #[test]
    fn inconsistent_spectrum_rejected() {
        // multiplicity 2 on diagonal 1 with nothing on diagonal 0
        let bad = vec![Scalar::q_pow(1), Scalar::q_pow(1)];
        assert!(recover_bipartition_from_spectrum(&bad).is_err());
    }

    #[test]
    fn quotient_consistency() {
        // every cyclotomic relation plus y_(empty,2) = 0 holds under the
        // mirabolic evaluation
        let ctx = ctx2();
        let ev = Evaluator::new(ctx);
        let y = idempotents_h210()
            .into_iter()
            .find(|(l, _)| l.to_string() == "[[],[2]]")
            .map(|(_, y)| y)
            .unwrap();
        // reinterpret the same terms in the mirabolic context
        let mut z = AlgElement::zero(ctx);
        for (w, c) in y.terms() {
            z = z.add(&AlgElement::from_word(ctx, w.clone()).scale(c));
        }
        assert!(ev.is_zero(&z));
    }

    #[test]
    fn parse_display_roundtrip() {
        let ctx = AlgebraContext::mirabolic(3);
        for text in [
            "e T1 T2",
            "1",
            "-T1 + 2*e",
            "(q^-1)*T1 e T1 - ((q - 1)/(q + 1))*e",
            "q*e - 1",
        ] {
            let a = parse_element(ctx, text).unwrap();
            let b = parse_element(ctx, &a.to_string()).unwrap();
            assert_eq!(a, b, "round-trip failed for {}", text);
        }
    }

    #[test]
    fn context_guards() {
        let hecke = AlgebraContext::hecke(2);
        assert!(parse_element(hecke, "e").is_err());
        assert!(parse_element(ctx2(), "T5").is_err());
    }
}
