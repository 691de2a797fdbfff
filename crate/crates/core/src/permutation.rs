//! The symmetric group `S_n` in one-line notation.
//!
//! Values are 1-based: `word[i] = u(i + 1)`. Positions in the public API are
//! 1-based as well wherever they appear in mathematical statements
//! (`position_of`), and 0-based when they index slices.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which whole-group enumeration is allowed.
pub const MAX_ENUMERATION_RANK: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(String::new()));
        }
        let mut seen = vec![false; n];
        for &x in &word {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "S_0 is not supported");
        Self {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `w₀ = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        assert!(n > 0, "S_0 is not supported");
        Self {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `u(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// `u⁻¹(value)`, a 1-based position.
    pub fn position_of(&self, value: usize) -> usize {
        self.word.iter().position(|&x| x == value).expect("value in 1..=n") + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self { word: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.word
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `t_{a,b} · u`: swap the values `a` and `b` in the word.
    pub fn apply_transposition(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::TranspositionOutOfRange { a, b, n });
        }
        let word = self
            .word
            .iter()
            .map(|&x| match x {
                x if x == a => b,
                x if x == b => a,
                x => x,
            })
            .collect();
        Ok(Self { word })
    }

    /// Swap the entries at 1-based positions `i` and `j` (`u · t_{i,j}`).
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Self { word }
    }

    /// Composition `self ∘ other`, i.e. `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(Self {
            word: other.word.iter().map(|&i| self.word[i - 1]).collect(),
        })
    }

    /// Number of descents `|{i : u(i) > u(i+1)}|`.
    pub fn descents(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Bruhat order by the rank-matrix criterion: `v ≤ w` iff for all `i, j`
    /// `|{k ≤ i : v(k) ≥ j}| ≤ |{k ≤ i : w(k) ≥ j}|`.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        self.check_rank(other)?;
        Ok(rank_matrix_leq(&self.word, &other.word))
    }

    /// All elements of `S_n` in lexicographic order of their words.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Permutation>> {
        if n == 0 {
            return Err(Error::InvalidPermutation(String::new()));
        }
        if n > MAX_ENUMERATION_RANK {
            return Err(Error::GuardExceeded {
                what: "rank n for enumeration of S_n",
                actual: n,
                limit: MAX_ENUMERATION_RANK,
            });
        }
        Ok((1..=n)
            .permutations(n)
            .map(|word| Permutation { word }))
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }
}

fn rank_matrix_leq(v: &[usize], w: &[usize]) -> bool {
    let n = v.len();
    // counts[j] = |{k ≤ i : x(k) ≥ j}| for the current prefix, j in 1..=n
    let mut cv = vec![0usize; n + 2];
    let mut cw = vec![0usize; n + 2];
    for i in 0..n {
        for j in 1..=v[i] {
            cv[j] += 1;
        }
        for j in 1..=w[i] {
            cw[j] += 1;
        }
        if (1..=n).any(|j| cv[j] > cw[j]) {
            return false;
        }
    }
    true
}

impl PartialOrd for Permutation {
    /// The Bruhat order. Permutations of different rank are incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.n() != other.n() {
            return None;
        }
        if self == other {
            return Some(Ordering::Equal);
        }
        match (
            rank_matrix_leq(&self.word, &other.word),
            rank_matrix_leq(&other.word, &self.word),
        ) {
            (true, _) => Some(Ordering::Less),
            (_, true) => Some(Ordering::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit strings (`"4231"`) for `n ≤ 9`, comma-separated values otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(s.to_string());
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(word).map_err(|_| bad())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

/// The Bruhat interval `[lower, upper]`, members sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatInterval {
    lower: Permutation,
    upper: Permutation,
    members: Vec<Permutation>,
}

impl BruhatInterval {
    /// Enumerates `[v, w]` by filtering all of `S_n`.
    pub fn new(v: &Permutation, w: &Permutation) -> Result<Self> {
        if !v.bruhat_leq(w)? {
            return Err(Error::NotBruhatLeq {
                v: v.to_string(),
                w: w.to_string(),
            });
        }
        let members = Permutation::all(v.n())?
            .filter(|u| rank_matrix_leq(&v.word, &u.word) && rank_matrix_leq(&u.word, &w.word))
            .collect();
        Ok(Self {
            lower: v.clone(),
            upper: w.clone(),
            members,
        })
    }

    /// The lower interval `[id, w]`.
    pub fn below(w: &Permutation) -> Result<Self> {
        Self::new(&Permutation::identity(w.n()), w)
    }

    pub fn lower(&self) -> &Permutation {
        &self.lower
    }

    pub fn upper(&self) -> &Permutation {
        &self.upper
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        self.members.binary_search_by(|m| m.word.cmp(&u.word)).is_ok()
    }
}

/// Convenience wrapper for [`BruhatInterval::new`].
pub fn interval(v: &Permutation, w: &Permutation) -> Result<BruhatInterval> {
    BruhatInterval::new(v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Bruhat order from its definition: the transitive closure of
    /// `u < t·u` whenever `ℓ(t·u) > ℓ(u)`.
    fn bruhat_by_closure(n: usize) -> Vec<(Permutation, Permutation)> {
        let all: Vec<_> = Permutation::all(n).unwrap().collect();
        let idx = |u: &Permutation| all.iter().position(|x| x == u).unwrap();
        let m = all.len();
        let mut reach = vec![vec![false; m]; m];
        for (i, u) in all.iter().enumerate() {
            reach[i][i] = true;
            for a in 1..=n {
                for b in a + 1..=n {
                    let t = u.apply_transposition(a, b).unwrap();
                    if t.length() > u.length() {
                        reach[i][idx(&t)] = true;
                    }
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                if reach[i][k] {
                    for j in 0..m {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if reach[i][j] {
                    out.push((all[i].clone(), all[j].clone()));
                }
            }
        }
        out
    }

    #[test]
    fn lengths() {
        assert_eq!(p("1234").length(), 0);
        // inversions of 4231: (4,2) (4,3) (4,1) (2,1) (3,1)
        assert_eq!(p("4231").length(), 5);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn transpositions() {
        let u = p("2143");
        let t = u.apply_transposition(1, 4).unwrap();
        assert_eq!(t, p("2413"));
        assert_eq!(t.length().abs_diff(u.length()), 1);
        assert_eq!(p("1234").apply_transposition(1, 2).unwrap(), p("2134"));
        assert_eq!(t.apply_transposition(1, 4).unwrap(), u);
        assert!(u.apply_transposition(0, 2).is_err());
        assert!(u.apply_transposition(2, 5).is_err());
        assert!(u.apply_transposition(3, 3).is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(p("1324").bruhat_leq(&p("4231")).unwrap());
        assert!(p("2143").bruhat_leq(&p("3412")).unwrap());
        assert!(!p("4321").bruhat_leq(&p("4231")).unwrap());
        assert!(p("123").bruhat_leq(&p("1234")).is_err());
    }

    #[test]
    fn rank_criterion_matches_transposition_closure() {
        for n in 1..=4 {
            let closure = bruhat_by_closure(n);
            let all: Vec<_> = Permutation::all(n).unwrap().collect();
            let mut count = 0;
            for v in &all {
                for w in &all {
                    let expected = closure.contains(&(v.clone(), w.clone()));
                    assert_eq!(v.bruhat_leq(w).unwrap(), expected, "{v} <= {w}");
                    count += expected as usize;
                }
            }
            assert_eq!(count, closure.len());
        }
    }

    #[test]
    fn antisymmetry_and_inverse_compatibility_s4() {
        let all: Vec<_> = Permutation::all(4).unwrap().collect();
        for v in &all {
            for w in &all {
                let le = v.bruhat_leq(w).unwrap();
                if le && w.bruhat_leq(v).unwrap() {
                    assert_eq!(v, w);
                }
                assert_eq!(le, v.inverse().bruhat_leq(&w.inverse()).unwrap());
            }
        }
    }

    #[test]
    fn intervals() {
        let id = Permutation::identity(4);
        let iv = interval(&id, &p("4231")).unwrap();
        assert_eq!(iv.len(), 20);
        assert!(iv.contains(&id) && iv.contains(&p("4231")));
        assert_eq!(interval(&id, &p("3412")).unwrap().len(), 14);
        let u = p("2413");
        assert_eq!(interval(&u, &u).unwrap().members(), &[u.clone()]);
        assert!(interval(&p("4231"), &p("1234")).is_err());
        for n in 1..=5 {
            let full = interval(&Permutation::identity(n), &Permutation::longest(n)).unwrap();
            assert_eq!(full.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn interval_members_are_exactly_the_sandwiched_elements() {
        let v = p("1324");
        let w = p("4231");
        let iv = interval(&v, &w).unwrap();
        for u in Permutation::all(4).unwrap() {
            let inside = v.bruhat_leq(&u).unwrap() && u.bruhat_leq(&w).unwrap();
            assert_eq!(iv.contains(&u), inside);
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("4231").word(), &[4, 2, 3, 1]);
        assert_eq!(p("4,2,3,1"), p("4231"));
        let big: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(big.n(), 10);
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(p("1").to_string(), "1");
        for bad in ["", "1224", "0123", "12a", "125", "1,,2"] {
            assert!(bad.parse::<Permutation>().is_err(), "{bad:?}");
        }
        let json = serde_json::to_string(&p("312")).unwrap();
        assert_eq!(json, "[3,1,2]");
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn partial_ord_is_bruhat() {
        assert!(p("1324") < p("4231"));
        assert!(p("4231") > p("2143"));
        assert_eq!(p("2143").partial_cmp(&p("1432")), None);
    }

    fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|w| Permutation::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_is_involutive(u in perm(9)) {
            prop_assert_eq!(u.inverse().inverse(), u.clone());
            prop_assert!(u.compose(&u.inverse()).unwrap().is_identity());
            prop_assert_eq!(u.inverse().length(), u.length());
        }

        #[test]
        fn transposition_changes_length_parity(u in perm(7), i in 0usize..7, j in 0usize..7) {
            let n = u.n();
            let (i, j) = (i % n + 1, j % n + 1);
            prop_assume!(i != j);
            let t = u.apply_transposition(u.at(i), u.at(j)).unwrap();
            prop_assert_eq!(t.length().abs_diff(u.length()) % 2, 1);
            prop_assert_eq!(t, u.swap_positions(i, j));
        }

        #[test]
        fn inverse_compatibility_sampled_s5(
            (v, w) in (Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(),
                       Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|(v, w)| (Permutation::new(v).unwrap(), Permutation::new(w).unwrap()))
        ) {
            prop_assert_eq!(
                v.bruhat_leq(&w).unwrap(),
                v.inverse().bruhat_leq(&w.inverse()).unwrap()
            );
        }
    }
}
