//! Permutations of `0..n` stored as image arrays.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::Permutation(format!("image {x} of {i} out of range")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Permutation(format!("{x} is hit twice")));
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x >= n || y >= n {
                    return Err(Error::Permutation(format!("point out of range in cycle {c:?}")));
                }
                if images[x].replace(y).is_some() {
                    return Err(Error::Permutation(format!("{x} appears in two cycles")));
                }
            }
        }
        Perm::from_images(images.iter().enumerate().map(|(i, x)| x.unwrap_or(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &Perm) -> Perm {
        assert_eq!(self.len(), first.len(), "composing permutations of different degree");
        Perm(first.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    /// Number of orbits, written ‖P‖.
    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.0)
    }

    /// Cycle notation with every cycle (fixed points included) written out.
    /// Labels of more than one character are separated by spaces.
    pub fn to_cycle_string<S: AsRef<str>>(&self, labels: &[S]) -> String {
        let spaced = labels.iter().any(|l| l.as_ref().chars().count() != 1);
        let mut s = String::new();
        for c in self.cycles() {
            s.push('(');
            for (i, &x) in c.iter().enumerate() {
                if spaced && i > 0 {
                    s.push(' ');
                }
                s.push_str(labels[x].as_ref());
            }
            s.push(')');
        }
        s
    }

    /// Parses cycle notation such as `(12)(3)(56)` or `(10 11)(2)` against a label list.
    pub fn parse_cycles<S: AsRef<str>>(text: &str, labels: &[S]) -> Result<Perm> {
        let lookup = |tok: &str| {
            labels
                .iter()
                .position(|l| l.as_ref() == tok)
                .ok_or_else(|| Error::Permutation(format!("unknown label {tok:?}")))
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Permutation(format!("expected '(' in {text:?}")))?;
            let close =
                open.find(')').ok_or_else(|| Error::Permutation(format!("unbalanced parentheses in {text:?}")))?;
            let body = open[..close].trim();
            let points = if body.contains(char::is_whitespace) {
                body.split_whitespace().map(lookup).collect::<Result<Vec<_>>>()?
            } else {
                body.chars().map(|c| lookup(&c.to_string())).collect::<Result<Vec<_>>>()?
            };
            cycles.push(points);
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycles(labels.len(), &cycles)
    }
}

/// Orbit count of a permutation given as an image slice.
pub fn cycle_count(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits() -> Vec<String> {
        (1..=6).map(|i| i.to_string()).collect()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let l = digits();
        let p = Perm::parse_cycles("(654321)", &l).unwrap();
        assert_eq!(p.to_cycle_string(&l), "(165432)");
        let q = Perm::parse_cycles("(12)(56)", &l).unwrap();
        assert_eq!(q.to_cycle_string(&l), "(12)(3)(4)(56)");
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let l = digits();
        let ext = Perm::parse_cycles("(12)(3)(4)(56)", &l).unwrap();
        let int = Perm::parse_cycles("(654321)", &l).unwrap();
        let c = ext.compose(&int);
        assert_eq!(c, Perm::parse_cycles("(2)(6)(4315)", &l).unwrap());
        assert_eq!(c.cycle_count(), 3);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn spaced_labels() {
        let l = vec!["10".to_string(), "11".to_string(), "2".to_string()];
        let p = Perm::parse_cycles("(10 11)(2)", &l).unwrap();
        assert_eq!(p.to_cycle_string(&l), "(10 11)(2)");
    }
}
