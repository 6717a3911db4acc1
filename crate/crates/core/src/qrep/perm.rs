use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1, …, m}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    length: usize,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of 1..{m}")));
            }
            seen[x] = true;
        }
        let length = inversions(&images);
        Ok(Self { images, length })
    }

    pub fn identity(m: usize) -> Self {
        Self { images: (1..=m).collect(), length: 0 }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    /// Right multiplication by the adjacent transposition `s_k = (k, k+1)`:
    /// `(σ s_k)(x) = σ(s_k(x))`.
    pub fn times_adjacent(&self, k: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(k - 1, k);
        let length = inversions(&images);
        Self { images, length }
    }

    /// All permutations of `1..=m` in lexicographic order of images.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Self { length: inversions(&cur), images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

fn inversions(images: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                count += 1;
            }
        }
    }
    count
}

/// A reduced expression `s_{k_1} ⋯ s_{k_ℓ}` in the symmetric group on `n+1`
/// letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    n: usize,
    letters: Vec<usize>,
}

impl TryFrom<WordRepr> for ReducedWord {
    type Error = Error;
    fn try_from(w: WordRepr) -> Result<Self> {
        ReducedWord::new(w.n, w.letters)
    }
}

impl From<ReducedWord> for WordRepr {
    fn from(w: ReducedWord) -> Self {
        WordRepr { n: w.n, letters: w.letters }
    }
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWord("rank n must be at least 1".into()));
        }
        if let Some(&k) = letters.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::InvalidWord(format!("letter s{k} is outside s1..s{n}")));
        }
        let p = word_permutation(n, &letters);
        if p.length() != letters.len() {
            return Err(Error::InvalidWord(format!(
                "{} is not reduced: its permutation has length {}",
                display_letters(&letters),
                p.length()
            )));
        }
        Ok(Self { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    /// Parses `s1s2s1`, `1,2,1`, `121` or `e` for the empty word.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "eps" || t == "ε" || t == "id" {
            return Self::new(n, Vec::new());
        }
        let letters: Result<Vec<usize>> = if t.contains('s') {
            t.split('s')
                .filter(|p| !p.is_empty())
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidWord(format!("cannot parse '{text}'"))))
                .collect()
        } else if t.contains(',') {
            t.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidWord(format!("cannot parse '{text}'"))))
                .collect()
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidWord(format!("cannot parse '{text}'"))))
                .collect()
        };
        Self::new(n, letters?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn permutation(&self) -> Permutation {
        word_permutation(self.n, &self.letters)
    }

    /// Concatenation, if it is still reduced.
    pub fn concat(&self, other: &ReducedWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidWord(format!("ranks {} and {} differ", self.n, other.n)));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(self.n, letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_letters(&self.letters))
    }
}

pub fn display_letters(letters: &[usize]) -> String {
    if letters.is_empty() {
        "e".to_string()
    } else {
        letters.iter().map(|k| format!("s{k}")).collect()
    }
}

fn word_permutation(n: usize, letters: &[usize]) -> Permutation {
    letters.iter().fold(Permutation::identity(n + 1), |p, &k| p.times_adjacent(k))
}

/// Every reduced word of every element, shortest first.
pub fn all_reduced_words(n: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::empty(n)];
    let mut frontier = vec![(Vec::<usize>::new(), Permutation::identity(n + 1))];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, p) in &frontier {
            for k in 1..=n {
                let q = p.times_adjacent(k);
                if q.length() == w.len() + 1 {
                    let mut w2 = w.clone();
                    w2.push(k);
                    out.push(ReducedWord { n, letters: w2.clone() });
                    next.push((w2, q));
                }
            }
        }
        frontier = next;
    }
    out
}

/// One reduced word per element, in the normal form
/// `s_[a1,b1] s_[a2,b2] ⋯` with `s_[a,b] = s_b s_{b-1} ⋯ s_a` and
/// `b1 < b2 < ⋯`.
pub fn canonical_reduced_words(n: usize) -> Vec<ReducedWord> {
    // for each b in 1..=n choose either nothing or a starting point a <= b
    let mut out = vec![Vec::<usize>::new()];
    for b in 1..=n {
        let mut next = Vec::with_capacity(out.len() * (b + 1));
        for w in &out {
            next.push(w.clone());
            for a in 1..=b {
                let mut w2 = w.clone();
                w2.extend((a..=b).rev());
                next.push(w2);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.into_iter().map(|letters| ReducedWord { n, letters }).collect()
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let images: std::result::Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse()).collect();
        Permutation::new(images.map_err(|_| Error::InvalidParameter(format!("cannot parse permutation '{s}'")))?)
    }
}

/// The row/column labels left after deleting index `skip` from `1..=n+1`.
fn skipping(n: usize, skip: usize) -> Vec<usize> {
    (1..=n + 1).filter(|&k| k != skip).collect()
}

/// `min over σ ∈ S_n` of `Σ_{k : j_σ(k) > i_k} (j_σ(k) − i_k)`, where
/// `i_1 < ⋯ < i_n` enumerate `1..=n+1` without `r` and `j` likewise without
/// `s`.
pub fn lemma_perm_min(n: usize, r: usize, s: usize) -> Result<usize> {
    if !(1 <= s && s < r && r <= n + 1) {
        return Err(Error::InvalidParameter(format!("need 1 <= s < r <= n+1, got n={n}, r={r}, s={s}")));
    }
    if n > 7 {
        return Err(Error::InvalidParameter(format!("n = {n} is above the brute-force limit 7")));
    }
    let i = skipping(n, r);
    let j = skipping(n, s);
    let best = Permutation::all(n)
        .iter()
        .map(|sigma| {
            (0..n)
                .map(|k| {
                    let jk = j[sigma.images[k] - 1];
                    jk.saturating_sub(i[k])
                })
                .sum::<usize>()
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_lengths() {
        assert_eq!(Permutation::new(vec![3, 2, 1]).unwrap().length(), 3);
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn reducedness() {
        assert!(ReducedWord::new(2, vec![1, 2, 1]).is_ok());
        assert!(matches!(ReducedWord::new(2, vec![1, 1]), Err(Error::InvalidWord(_))));
        assert!(ReducedWord::new(2, vec![3]).is_err());
        assert_eq!(ReducedWord::parse(2, "s1s2s1").unwrap().letters(), &[1, 2, 1]);
        assert_eq!(ReducedWord::parse(2, "e").unwrap().len(), 0);
        assert_eq!(ReducedWord::parse(3, "2,3").unwrap().to_string(), "s2s3");
    }

    #[test]
    fn word_counts() {
        // reduced words of S3: e, s1, s2, s1s2, s2s1, s1s2s1, s2s1s2
        assert_eq!(all_reduced_words(2).len(), 7);
        assert_eq!(canonical_reduced_words(2).len(), 6);
        assert_eq!(canonical_reduced_words(3).len(), 24);
        let perms: std::collections::HashSet<_> =
            canonical_reduced_words(3).iter().map(|w| w.permutation().images().to_vec()).collect();
        assert_eq!(perms.len(), 24);
        for w in canonical_reduced_words(3) {
            assert!(ReducedWord::new(3, w.letters().to_vec()).is_ok());
        }
    }

    #[test]
    fn lemma_small_cases() {
        assert_eq!(lemma_perm_min(2, 3, 1).unwrap(), 2);
        assert!(lemma_perm_min(2, 2, 1).unwrap() >= 1);
        assert!(lemma_perm_min(2, 1, 1).is_err());
    }
}
