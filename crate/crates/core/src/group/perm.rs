use std::fmt;

use super::GroupError;

/// A permutation of `{0, .., degree - 1}` stored as its image list.
///
/// Cycle notation is 1-based: `"(1 2 3)(4 5)"` sends 1 to 2, 2 to 3, 3 to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from 0-based images, rejecting repeats and
    /// out-of-range points.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &p in &images {
            if p >= degree {
                return Err(GroupError::Input(format!("image {} out of range for degree {}", p + 1, degree)));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(GroupError::Input(format!("repeated image {}", p + 1)));
            }
        }
        Ok(Self { images: images.into_iter().map(|p| p as u16).collect() })
    }

    /// Parses disjoint cycles in 1-based notation. Fixed points may be omitted;
    /// `""` and `"()"` are the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Input(format!("expected '(' in cycle notation: {text:?}")))?;
            let close = open.find(')').ok_or_else(|| GroupError::Input(format!("unclosed cycle in {text:?}")))?;
            let points = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let p: usize = s.parse().map_err(|_| GroupError::Input(format!("bad point {s:?} in {text:?}")))?;
                    if p == 0 || p > degree {
                        return Err(GroupError::Input(format!("point {p} outside 1..={degree}")));
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<_>, _>>()?;
            for &p in &points {
                if std::mem::replace(&mut used[p], true) {
                    return Err(GroupError::Input(format!("point {} repeated in {text:?}", p + 1)));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` followed by `other`: `(self.then(other))(p) = other(self(p))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Disjoint-union action: `self` on the first block, `other` shifted past it.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.images.len() as u16;
        let images = self.images.iter().copied().chain(other.images.iter().map(|&p| p + shift)).collect();
        Perm { images }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "({}", start + 1)?;
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                write!(f, " {}", p + 1)?;
                seen[p] = true;
                p = self.apply(p);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(4), 3);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse_cycles("", 3).unwrap().to_string(), "()");
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(Perm::parse_cycles("1 2", 3).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_order() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.direct_sum(&b).to_string(), "(1 2)(5 6)");
    }
}
