//! Lower bounds for the best Lipschitz constant of a `(rho, sigma)`-equivariant
//! map of the hyperbolic plane.
//!
//! Such a map with constant `C` forces `l(sigma(w)) <= C l(rho(w))` for every
//! group element `w`, so the supremum of translation-length ratios over any
//! finite set of words bounds `C` from below. Words are taken in the free
//! group on the generators; relator conjugates have `rho`-length near zero
//! and are dropped by the denominator floor.
//!
//! The verdict is one-sided: a bound `>= 1` refutes admissibility, anything
//! else is merely "not refuted".

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{euler_class, translation_length, Moebius, Representation, SurfaceGroup, Word};

pub const DEFAULT_MAX_WORD_LENGTH: usize = 6;
pub const DEFAULT_DENOMINATOR_FLOOR: f64 = 1e-6;

/// Alphabet `-2g, ..., -1, 1, ..., 2g` in ascending order.
fn alphabet(genus: u32) -> Vec<i32> {
    let n = 2 * genus as i32;
    (-n..=n).filter(|&l| l != 0).collect()
}

/// Number of reduced words of length `len` over `2g` generators: `4g (4g - 1)^(len - 1)`.
pub fn reduced_word_count(genus: u32, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let k = 4 * genus as u128;
    k * (k - 1).pow(len as u32 - 1)
}

/// Reduced words of length `1..=max_len`.
pub fn total_word_count(genus: u32, max_len: usize) -> u128 {
    (1..=max_len).map(|l| reduced_word_count(genus, l)).sum()
}

/// Streams every reduced word of length `1..=max_len` exactly once, in shortlex order.
pub fn enumerate_reduced_words(genus: u32, max_len: usize) -> Result<ReducedWords> {
    SurfaceGroup::new(genus)?;
    if max_len == 0 {
        return Err(Error::input("maximal word length must be at least 1"));
    }
    Ok(ReducedWords {
        alphabet: alphabet(genus),
        max_len,
        current: Vec::new(),
    })
}

pub struct ReducedWords {
    alphabet: Vec<i32>,
    max_len: usize,
    /// Alphabet indices of the last word produced.
    current: Vec<usize>,
}

impl ReducedWords {
    fn letter(&self, i: usize) -> i32 {
        self.alphabet[i]
    }

    /// Smallest valid index `>= from` at position `pos`, given the prefix.
    fn valid_from(&self, pos: usize, from: usize) -> Option<usize> {
        (from..self.alphabet.len())
            .find(|&i| pos == 0 || self.letter(i) != -self.letter(self.current[pos - 1]))
    }

    fn fill_from(&mut self, pos: usize) {
        for p in pos..self.current.len() {
            self.current[p] = self.valid_from(p, 0).expect("alphabet has at least 8 letters");
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.current.is_empty() {
            self.current = vec![0];
        } else {
            // odometer step at the last position, carrying leftwards
            let mut pos = self.current.len();
            loop {
                if pos == 0 {
                    let len = self.current.len() + 1;
                    if len > self.max_len {
                        return None;
                    }
                    self.current = vec![0; len];
                    self.fill_from(0);
                    break;
                }
                pos -= 1;
                if let Some(i) = self.valid_from(pos, self.current[pos] + 1) {
                    self.current[pos] = i;
                    self.fill_from(pos + 1);
                    break;
                }
            }
        }
        Some(Word::from_reduced(
            self.current.iter().map(|&i| self.letter(i)).collect(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzEstimate {
    pub lower_bound: f64,
    /// Empty when no word clears the denominator floor.
    pub witness: Word,
    pub words_scanned: u64,
    pub max_word_length: usize,
    pub denominator_floor: f64,
}

/// How the scan is split for parallel evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partitioning {
    Sequential,
    /// One task per leading letter.
    LeadingLetter,
    /// One task per reduced prefix of length two.
    LeadingPair,
}

#[derive(Debug, Clone)]
struct Best {
    ratio: f64,
    witness: Option<Vec<i32>>,
    scanned: u64,
}

impl Best {
    fn empty() -> Self {
        Best { ratio: 0.0, witness: None, scanned: 0 }
    }

    fn offer(&mut self, ratio: f64, word: &[i32]) {
        let better = match &self.witness {
            None => true,
            Some(w) => match ratio.total_cmp(&self.ratio) {
                Ordering::Greater => true,
                Ordering::Equal => shortlex(word, w) == Ordering::Less,
                Ordering::Less => false,
            },
        };
        if better {
            self.ratio = ratio;
            self.witness = Some(word.to_vec());
        }
    }

    /// Associative and commutative merge.
    fn merge(mut self, other: Best) -> Best {
        self.scanned += other.scanned;
        if let Some(w) = &other.witness {
            self.offer(other.ratio, w);
        }
        self
    }
}

fn shortlex(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct Scan<'a> {
    rho: &'a Representation,
    sigma: &'a Representation,
    alphabet: Vec<i32>,
    max_len: usize,
    floor: f64,
}

impl Scan<'_> {
    /// Depth-first scan of every reduced word extending `prefix`, prefix included.
    fn subtree(&self, prefix: &[i32]) -> Best {
        let mut best = Best::empty();
        let mut word = Vec::with_capacity(self.max_len);
        let mut r = Moebius::identity();
        let mut s = Moebius::identity();
        for &l in prefix {
            word.push(l);
            r = r.mul(&self.rho.letter(l).expect("letter in range"));
            s = s.mul(&self.sigma.letter(l).expect("letter in range"));
        }
        self.visit(&mut word, r, s, &mut best);
        best
    }

    fn visit(&self, word: &mut Vec<i32>, r: Moebius, s: Moebius, best: &mut Best) {
        best.scanned += 1;
        let denom = translation_length(&r);
        if denom > self.floor {
            best.offer(translation_length(&s) / denom, word);
        }
        if word.len() == self.max_len {
            return;
        }
        let last = *word.last().expect("nonempty prefix");
        for &l in &self.alphabet {
            if l == -last {
                continue;
            }
            let r2 = r.mul(&self.rho.letter(l).expect("letter in range"));
            let s2 = s.mul(&self.sigma.letter(l).expect("letter in range"));
            word.push(l);
            self.visit(word, r2, s2, best);
            word.pop();
        }
    }
}

/// `max_w l(sigma(w)) / l(rho(w))` over reduced words of length `1..=max_len`
/// with `l(rho(w)) > floor`, split by leading letter.
pub fn lipschitz_lower_bound(
    rho: &Representation,
    sigma: &Representation,
    max_len: usize,
    floor: f64,
) -> Result<LipschitzEstimate> {
    lipschitz_lower_bound_with(rho, sigma, max_len, floor, Partitioning::LeadingLetter)
}

pub fn lipschitz_lower_bound_with(
    rho: &Representation,
    sigma: &Representation,
    max_len: usize,
    floor: f64,
    partitioning: Partitioning,
) -> Result<LipschitzEstimate> {
    if rho.genus() != sigma.genus() {
        return Err(Error::GenusMismatch {
            left: rho.genus(),
            right: sigma.genus(),
        });
    }
    if max_len == 0 {
        return Err(Error::input("maximal word length must be at least 1"));
    }
    if !(floor > 0.0) {
        return Err(Error::input("denominator floor must be positive"));
    }
    let scan = Scan {
        rho,
        sigma,
        alphabet: alphabet(rho.genus()),
        max_len,
        floor,
    };
    let roots: Vec<Vec<i32>> = match partitioning {
        Partitioning::Sequential | Partitioning::LeadingLetter => {
            scan.alphabet.iter().map(|&l| vec![l]).collect()
        }
        Partitioning::LeadingPair => {
            let mut roots: Vec<Vec<i32>> = scan.alphabet.iter().map(|&l| vec![l]).collect();
            if max_len >= 2 {
                // length-1 words are scanned on their own; pairs carry the subtrees
                roots = scan
                    .alphabet
                    .iter()
                    .flat_map(|&a| {
                        scan.alphabet
                            .iter()
                            .filter(move |&&b| b != -a)
                            .map(move |&b| vec![a, b])
                    })
                    .collect();
            }
            roots
        }
    };
    let mut best = match partitioning {
        Partitioning::Sequential => roots
            .iter()
            .map(|p| scan.subtree(p))
            .fold(Best::empty(), Best::merge),
        _ => roots
            .par_iter()
            .map(|p| scan.subtree(p))
            .reduce(Best::empty, Best::merge),
    };
    if partitioning == Partitioning::LeadingPair && max_len >= 2 {
        let shallow = Scan { max_len: 1, ..scan };
        for &l in &shallow.alphabet {
            best = best.merge(shallow.subtree(&[l]));
        }
    }
    Ok(LipschitzEstimate {
        lower_bound: if best.witness.is_some() { best.ratio } else { 0.0 },
        witness: Word::from_reduced(best.witness.unwrap_or_default()),
        words_scanned: best.scanned,
        max_word_length: max_len,
        denominator_floor: floor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Refuted,
    NotRefuted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub euler_rho: i64,
    pub euler_sigma: i64,
    pub lipschitz: LipschitzEstimate,
    pub verdict: Verdict,
}

/// Euler classes, Lipschitz bound and verdict for a candidate pair.
///
/// `rho` must pass the Euler integrality gate with maximal Euler class
/// `|e| = 2g - 2`. The verdict is `Refuted` when the bound reaches 1 or
/// `sigma` also has maximal Euler class (it then lies in a Fuchsian
/// component). `NotRefuted` does not certify admissibility.
pub fn admissibility_report(
    rho: &Representation,
    sigma: &Representation,
    max_len: usize,
) -> Result<AdmissibilityReport> {
    if rho.genus() != sigma.genus() {
        return Err(Error::GenusMismatch {
            left: rho.genus(),
            right: sigma.genus(),
        });
    }
    let bound = rho.group().milnor_wood_bound();
    let euler_rho = euler_class(rho)?.euler;
    if euler_rho.abs() != bound {
        return Err(Error::NotFuchsian {
            euler: euler_rho.abs(),
            expected: bound,
        });
    }
    let euler_sigma = euler_class(sigma)?.euler;
    let lipschitz = lipschitz_lower_bound(rho, sigma, max_len, DEFAULT_DENOMINATOR_FLOOR)?;
    let verdict = if lipschitz.lower_bound >= 1.0 || euler_sigma.abs() == bound {
        Verdict::Refuted
    } else {
        Verdict::NotRefuted
    };
    Ok(AdmissibilityReport {
        euler_rho,
        euler_sigma,
        lipschitz,
        verdict,
    })
}

/// Wire format of the `lipschitz` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub euler_rho: i64,
    pub euler_sigma: i64,
    pub lipschitz_lower_bound: f64,
    pub witness: Vec<i32>,
    pub max_word_length: usize,
    pub verdict: Verdict,
}

impl From<&AdmissibilityReport> for ReportRecord {
    fn from(r: &AdmissibilityReport) -> Self {
        ReportRecord {
            euler_rho: r.euler_rho,
            euler_sigma: r.euler_sigma,
            lipschitz_lower_bound: r.lipschitz.lower_bound,
            witness: r.lipschitz.witness.letters().to_vec(),
            max_word_length: r.lipschitz.max_word_length,
            verdict: r.verdict,
        }
    }
}
