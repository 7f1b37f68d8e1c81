//! Words in the braid group B3 and exact word equality through the reduced
//! 2x2 representation over integer Laurent polynomials, which is faithful on
//! B3 (a classical fact this crate assumes rather than proves). Used to check
//! the pure-braid generation identities of the two-curve A2 chamber picture.
//!
//! Words are written over `a`, `b` (the standard generators) with uppercase
//! for inverses, so `"aabA"` is a * a * b * a^-1.

use crate::Error;
use num::{BigInt, One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A braid word over the two generators of B3. Letters are +-1 (a) and +-2
/// (b), negative for inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn new(letters: Vec<i8>) -> Result<Self, Error> {
        if letters.iter().any(|&l| !matches!(l, 1 | -1 | 2 | -2)) {
            return Err(Error::Braid("letters must be one of 1, -1, 2, -2".into()));
        }
        Ok(BraidWord { letters })
    }

    /// Parses `a`, `b`, `A`, `B` strings; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            match ch {
                'a' => letters.push(1),
                'A' => letters.push(-1),
                'b' => letters.push(2),
                'B' => letters.push(-2),
                c if c.is_whitespace() => {}
                other => {
                    return Err(Error::Braid(format!(
                        "illegal letter {other:?}; use a, b, A, B"
                    )))
                }
            }
        }
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i8> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.letters {
            let c = match l {
                1 => 'a',
                -1 => 'A',
                2 => 'b',
                -2 => 'B',
                _ => unreachable!(),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Integer-coefficient Laurent polynomial in one variable, sparse and exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    /// exponent -> coefficient, no zero coefficients stored.
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, BigInt::from(coeff));
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        Laurent { terms }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// `Some((exp, sign))` when the polynomial is exactly `+-t^exp`.
    pub fn as_signed_power(&self) -> Option<(i64, i8)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        if c.clone().abs() == BigInt::one() {
            Some((e, if c > &BigInt::zero() { 1 } else { -1 }))
        } else {
            None
        }
    }
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            if c < &BigInt::zero() {
                write!(f, "-")?;
                if !first {
                    write!(f, " ")?;
                }
            } else if !first {
                write!(f, "+ ")?;
            }
            let a = c.clone().abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != BigInt::one() {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// A 2x2 matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub entries: [[Laurent; 2]; 2],
}

impl LaurentMatrix {
    pub fn identity() -> Self {
        LaurentMatrix {
            entries: [
                [Laurent::one(), Laurent::zero()],
                [Laurent::zero(), Laurent::one()],
            ],
        }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let e = &self.entries;
        let f = &other.entries;
        let cell = |i: usize, j: usize| {
            e[i][0].mul(&f[0][j]).add(&e[i][1].mul(&f[1][j]))
        };
        LaurentMatrix {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn det(&self) -> Laurent {
        let e = &self.entries;
        e[0][0].mul(&e[1][1]).add(&e[0][1].mul(&e[1][0]).neg())
    }
}

fn generator_matrix(letter: i8) -> LaurentMatrix {
    // sigma_1 -> [[-t, 1], [0, 1]], sigma_2 -> [[1, 0], [t, -t]], and the
    // exact inverses with t^-1 entries.
    let m = |rows: [[Laurent; 2]; 2]| LaurentMatrix { entries: rows };
    match letter {
        1 => m([
            [Laurent::monomial(1, -1), Laurent::one()],
            [Laurent::zero(), Laurent::one()],
        ]),
        -1 => m([
            [Laurent::monomial(-1, -1), Laurent::monomial(-1, 1)],
            [Laurent::zero(), Laurent::one()],
        ]),
        2 => m([
            [Laurent::one(), Laurent::zero()],
            [Laurent::monomial(1, 1), Laurent::monomial(1, -1)],
        ]),
        -2 => m([
            [Laurent::one(), Laurent::zero()],
            [Laurent::one(), Laurent::monomial(-1, -1)],
        ]),
        _ => unreachable!("validated letters"),
    }
}

/// Image of a word under the reduced representation. Multiplicative: the
/// image of `uv` is `burau(u) * burau(v)`.
pub fn burau(word: &BraidWord) -> LaurentMatrix {
    word.letters
        .iter()
        .fold(LaurentMatrix::identity(), |acc, &l| {
            acc.mul(&generator_matrix(l))
        })
}

/// Exact word equality in B3 through the representation.
pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    burau(w1) == burau(w2)
}

/// Image in the symmetric group on {1,2,3}: `perm[i]` is where strand i+1
/// goes. Generators map to the adjacent transpositions.
pub fn permutation_image(word: &BraidWord) -> [usize; 3] {
    let mut perm = [1usize, 2, 3];
    for &l in &word.letters {
        let swap = if l.abs() == 1 { (0, 1) } else { (1, 2) };
        perm.swap(swap.0, swap.1);
    }
    perm
}

pub fn is_pure(word: &BraidWord) -> bool {
    permutation_image(word) == [1, 2, 3]
}

/// One named check of the verification report.
#[derive(Debug, Clone, Serialize)]
pub struct BraidCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Report for the pure-braid generation argument in the two-curve A2 case.
#[derive(Debug, Clone, Serialize)]
pub struct Example64Report {
    pub checks: Vec<BraidCheck>,
    pub all_pass: bool,
}

/// Verifies the word identities behind the claim that the twists `a^2`,
/// `b^2`, `(aba)^2` generate the full pure braid group P3:
///
/// 1. `a^2 b a^2 b = (aba)^2` (and both equal `ababab`),
/// 2. `a^-2 (a^2 b a^2 b) b^-2 = b a^2 b^-1`,
/// 3. `a^2`, `b^2`, `(aba)^2` and `b a^2 b^-1` are pure,
///
/// so the standard generators `a^2`, `b^2`, `b a^2 b^-1` of P3 all lie in the
/// twist subgroup.
pub fn verify_example() -> Example64Report {
    let w = |s: &str| BraidWord::parse(s).unwrap();
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(BraidCheck {
            name: name.into(),
            pass,
            detail,
        });
    };

    let f = w("aabaab");
    let aba2 = w("abaaba");
    let ababab = w("ababab");
    let eq1 = words_equal(&f, &aba2) && words_equal(&f, &ababab);
    push(
        "square_twist_identity",
        eq1,
        format!("{f} = {aba2} = {ababab}"),
    );

    let lhs = w("AA").concat(&f).concat(&w("BB"));
    let rhs = w("baaB");
    let eq2 = words_equal(&lhs, &rhs);
    push("conjugate_identity", eq2, format!("{lhs} = {rhs}"));

    for word in [w("aa"), w("bb"), w("abaaba"), w("baaB")] {
        let pure = is_pure(&word);
        push(
            &format!("pure_{word}"),
            pure,
            format!("permutation image of {word} is {:?}", permutation_image(&word)),
        );
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Example64Report { checks, all_pass }
}
