//! Permutations of `{0, 1, ..., degree-1}` in image-list form.
//!
//! The canonical total order on permutations is lexicographic on the image
//! sequence; every deterministic representative choice in the crate (coset
//! representatives, class representatives, subgroup keys) reduces to this
//! order.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation stored as its image list: `p.apply(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build a permutation from an image list, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if seen[i] {
                return Err(Error::MalformedPermutation(format!("image {i} repeated")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Build a permutation of the given degree from disjoint-cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to as usize >= degree {
                    return Err(Error::MalformedPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// Composition acting left-to-right on points being tracked through
    /// `self` first: `(self * other).apply(i) = other.apply(self.apply(i))`.
    ///
    /// With this convention `compose(a, b)` is the usual right action
    /// product; the crate uses it consistently everywhere.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&mid| other.images[mid as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }

    /// Disjoint-cycle decomposition (fixed points omitted), cycles listed by
    /// minimal moved point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u16 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next as usize] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_fixes_everything() {
        let e = Perm::identity(5);
        for i in 0..5 {
            assert_eq!(e.apply(i), i);
        }
        assert!(e.is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_construction() {
        // (0 1 2) on 4 points.
        let p = Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3]);
        assert_eq!(p.order(), 3);
        assert_eq!(format!("{p}"), "(0 1 2)");
    }

    #[test]
    fn compose_tracks_points_left_to_right() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    #[test]
    fn lexicographic_order_on_images() {
        let e = Perm::identity(3);
        let t = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        // identity [0,1,2] < 3-cycle [1,2,0] < transposition [1,0,2]? No:
        // [1,0,2] < [1,2,0] lexicographically.
        assert!(e < t);
        assert!(t < c);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(seed in 0u64..1000) {
            use rand::{SeedableRng, seq::SliceRandom};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut images: Vec<u16> = (0..8).collect();
            images.shuffle(&mut rng);
            let p = Perm::from_images(images).unwrap();
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn compose_associative(s1 in 0u64..300, s2 in 0u64..300, s3 in 0u64..300) {
            use rand::{SeedableRng, seq::SliceRandom};
            let mk = |seed| {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut images: Vec<u16> = (0..6).collect();
                images.shuffle(&mut rng);
                Perm::from_images(images).unwrap()
            };
            let (a, b, c) = (mk(s1), mk(s2), mk(s3));
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }
}
