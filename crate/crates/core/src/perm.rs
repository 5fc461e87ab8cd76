//! Permutations of `{0, .., n-1}` and the cycle-notation group-spec format.

use std::fmt;

use crate::error::{GroupError, Result};

/// A bijection on `{0, .., degree-1}`, stored as its image list.
///
/// Ordering is lexicographic on the image list, so the identity is the
/// smallest permutation of any given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(GroupError::NotBijection { degree });
        }
        let mut seen = vec![false; degree];
        for &x in &images {
            let x = x as usize;
            if x >= degree || seen[x] {
                return Err(GroupError::NotBijection { degree });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= degree || touched[x] {
                    return Err(GroupError::NotBijection { degree });
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}

/// Parses a group spec: one permutation per line in disjoint-cycle notation
/// over 0-based points, e.g. `(0 1 2)(3 4)`. Blank lines and `#` comments are
/// ignored; `()` denotes the identity. All generators share the degree
/// `1 + max point`, which must not exceed `max_degree`.
pub fn parse_group_spec(text: &str, max_degree: usize) -> Result<Vec<Permutation>> {
    let mut lines: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
    let mut max_point: Option<u32> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let cycles = parse_cycle_line(content).map_err(|message| GroupError::Parse {
            line: line_no,
            message,
        })?;
        let mut seen = std::collections::HashSet::new();
        for &x in cycles.iter().flatten() {
            if !seen.insert(x) {
                return Err(GroupError::Parse {
                    line: line_no,
                    message: format!("point {x} appears twice"),
                });
            }
            max_point = Some(max_point.map_or(x, |m| m.max(x)));
        }
        lines.push((line_no, cycles));
    }
    if lines.is_empty() {
        return Err(GroupError::Parse {
            line: 0,
            message: "no permutations found".into(),
        });
    }
    let degree = max_point.map_or(1, |m| m as usize + 1);
    if degree > max_degree {
        return Err(GroupError::DegreeCapExceeded {
            degree,
            cap: max_degree,
        });
    }
    lines
        .into_iter()
        .map(|(line, cycles)| {
            let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
            Permutation::from_cycles(degree, &refs).map_err(|e| GroupError::Parse {
                line,
                message: e.to_string(),
            })
        })
        .collect()
}

fn parse_cycle_line(content: &str) -> std::result::Result<Vec<Vec<u32>>, String> {
    let mut cycles = Vec::new();
    let mut rest = content;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('(') else {
            return Err(format!("expected '(' at {rest:?}"));
        };
        let Some(end) = body.find(')') else {
            return Err("unclosed cycle".into());
        };
        let inner = &body[..end];
        if inner.contains('(') {
            return Err("nested '('".into());
        }
        let cycle = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| format!("invalid point {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = &body[end + 1..];
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        let id = Permutation::identity(3);
        assert_eq!(t.compose(&id).unwrap(), t);
        // (0 1 2) ∘ (0 1): 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(c.compose(&t).unwrap(), p(&[2, 1, 0]));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(GroupError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(a.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        let parsed = parse_group_spec(&a.to_string(), 64).unwrap();
        assert_eq!(parsed, vec![a]);
    }

    #[test]
    fn parse_spec_file() {
        let text = "# S3 on three points\n(0 1 2)\n\n(0 1)  # a transposition\n";
        let gens = parse_group_spec(text, 64).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].degree(), 3);
        assert_eq!(gens[1], p(&[1, 0, 2]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_group_spec("(0 1)\n(0 1 x)\n", 64).unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 2, .. }), "{err}");
        let err = parse_group_spec("(0 1)\n\n(1 2)(2 3)\n", 64).unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 3, .. }), "{err}");
        let err = parse_group_spec("(0 1\n", 64).unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 1, .. }));
        assert!(parse_group_spec("# nothing\n", 64).is_err());
        assert_eq!(
            parse_group_spec("(0 70)", 64).unwrap_err(),
            GroupError::DegreeCapExceeded { degree: 71, cap: 64 }
        );
    }

    #[test]
    fn inverse_and_cycles() {
        let a = Permutation::from_cycles(6, &[&[0, 3, 5], &[1, 2]]).unwrap();
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(a.cycles(), vec![vec![0, 3, 5], vec![1, 2]]);
    }
}
