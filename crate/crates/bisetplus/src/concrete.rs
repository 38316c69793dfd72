//! Concrete (G, H)-bisets: explicit finite sets with commuting left and
//! right actions, realization of standard classes, orbit classification and
//! the tensor product over the middle group.
//!
//! The tensor path — realize two classes, form `U ⊗_H V`, classify the
//! orbits by their stabilizers — computes the composition of double
//! Burnside elements from first principles, with no reference to the star
//! product or double cosets, and is used as the independent cross-check for
//! Mackey composition.

use crate::biset::BisetElement;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::product::{product_of, ProductSubgroup};

/// A finite set with a left `G`-action and a commuting right `H`-action,
/// stored as action tables indexed by group element index.
pub struct ConcreteBiset {
    left: PermGroup,
    right: PermGroup,
    size: usize,
    /// `left_act[g][x] = g · x`.
    left_act: Vec<Vec<u32>>,
    /// `right_act[h][x] = x · h`.
    right_act: Vec<Vec<u32>>,
}

impl ConcreteBiset {
    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply_left(&self, g: u32, x: u32) -> u32 {
        self.left_act[g as usize][x as usize]
    }

    pub fn apply_right(&self, x: u32, h: u32) -> u32 {
        self.right_act[h as usize][x as usize]
    }

    /// `{g : g · x = x}` as a member key in the left group.
    pub fn left_stab(&self, x: u32) -> Vec<u32> {
        (0..self.left.order() as u32)
            .filter(|&g| self.apply_left(g, x) == x)
            .collect()
    }

    /// `{h : x · h = x}` as a member key in the right group.
    pub fn right_stab(&self, x: u32) -> Vec<u32> {
        (0..self.right.order() as u32)
            .filter(|&h| self.apply_right(x, h) == x)
            .collect()
    }

    /// Stabilizer of `x` under the combined action `(g, h) · x = g · x · h⁻¹`
    /// of `G × H`; this is the subgroup whose standard class the orbit of
    /// `x` realizes.
    pub fn biset_stab(&self, x: u32) -> ProductSubgroup {
        let mut pairs = Vec::new();
        for g in 0..self.left.order() as u32 {
            let gx = self.apply_left(g, x);
            for h in 0..self.right.order() as u32 {
                if self.apply_right(gx, self.right.inv_idx(h)) == x {
                    pairs.push((g, h));
                }
            }
        }
        ProductSubgroup::from_trusted_pairs(self.left.clone(), self.right.clone(), pairs)
    }

    /// Orbit representatives under the combined `G × H` action, in canonical
    /// (minimal point) order.
    pub fn orbit_reps(&self) -> Vec<u32> {
        let mut seen = vec![false; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size as u32 {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            let mut queue = vec![x];
            seen[x as usize] = true;
            let mut qi = 0;
            while qi < queue.len() {
                let y = queue[qi];
                qi += 1;
                for g in 0..self.left.order() as u32 {
                    let z = self.apply_left(g, y);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        queue.push(z);
                    }
                }
                for h in 0..self.right.order() as u32 {
                    let z = self.apply_right(y, h);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        queue.push(z);
                    }
                }
            }
        }
        reps
    }

    /// Decompose into a sum of standard classes: one term `[G×H/stab(x)]`
    /// per orbit.
    pub fn classify(&self) -> BisetElement {
        let mut out = BisetElement::zero(&self.left, &self.right);
        for x in self.orbit_reps() {
            out.add_class(&self.biset_stab(x), 1);
        }
        out
    }

    /// Tensor product over the middle group: for a `(G, H)`-biset `U` and an
    /// `(H, K)`-biset `V`, the set `U ⊗_H V = (U × V) / (u·h, v) ~ (u, h·v)`
    /// with `g · [u, v] · k = [g·u, v·k]`.
    pub fn tensor(&self, other: &ConcreteBiset) -> Result<ConcreteBiset> {
        if self.right != other.left {
            return Err(Error::CompositionMismatch(
                "tensor requires the right group of the first biset to equal the left group of the second".into(),
            ));
        }
        let (nu, nv) = (self.size, other.size);
        let raw = |u: u32, v: u32| -> u32 { u * nv as u32 + v };

        // Union-find over raw pairs.
        let mut parent: Vec<u32> = (0..(nu * nv) as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let union = |parent: &mut [u32], a: u32, b: u32| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                // Attach the larger id to the smaller so roots are minimal.
                if ra < rb {
                    parent[rb as usize] = ra;
                } else {
                    parent[ra as usize] = rb;
                }
            }
        };
        for h in 0..self.right.order() as u32 {
            for u in 0..nu as u32 {
                let uh = self.apply_right(u, h);
                for v in 0..nv as u32 {
                    let hv = other.apply_left(h, v);
                    union(&mut parent, raw(uh, v), raw(u, hv));
                }
            }
        }
        // Number the classes by their minimal raw point.
        let mut class_id = vec![u32::MAX; nu * nv];
        let mut count = 0u32;
        for x in 0..(nu * nv) as u32 {
            let r = find(&mut parent, x);
            if class_id[r as usize] == u32::MAX {
                class_id[r as usize] = count;
                count += 1;
            }
            class_id[x as usize] = class_id[r as usize];
        }
        let size = count as usize;
        // A representative raw point per class (the minimal one is its root,
        // first encountered in the scan above).
        let mut rep_of = vec![u32::MAX; size];
        for x in 0..(nu * nv) as u32 {
            let c = class_id[x as usize];
            if rep_of[c as usize] == u32::MAX {
                rep_of[c as usize] = x;
            }
        }

        let left_act = (0..self.left.order() as u32)
            .map(|g| {
                (0..size as u32)
                    .map(|c| {
                        let r = rep_of[c as usize];
                        let (u, v) = (r / nv as u32, r % nv as u32);
                        class_id[raw(self.apply_left(g, u), v) as usize]
                    })
                    .collect()
            })
            .collect();
        let right_act = (0..other.right.order() as u32)
            .map(|k| {
                (0..size as u32)
                    .map(|c| {
                        let r = rep_of[c as usize];
                        let (u, v) = (r / nv as u32, r % nv as u32);
                        class_id[raw(u, other.apply_right(v, k)) as usize]
                    })
                    .collect()
            })
            .collect();
        Ok(ConcreteBiset {
            left: self.left.clone(),
            right: other.right.clone(),
            size,
            left_act,
            right_act,
        })
    }
}

/// Realize the standard class `[G×H/D]` as a concrete biset: the left cosets
/// of `D` in `G × H`, with `g · (tD) · h = ((g, h⁻¹) t) D`.
pub fn realize(d: &ProductSubgroup) -> ConcreteBiset {
    let g = d.left().clone();
    let h = d.right().clone();
    let amb = product_of(&g, &h);
    let p = amb.group();
    let d_members = d.ambient_members();

    // Coset numbering: coset_of[ambient element] = coset id, ids in order of
    // minimal representative.
    let mut coset_of = vec![u32::MAX; p.order()];
    let mut reps = Vec::new();
    for t in 0..p.order() as u32 {
        if coset_of[t as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(t);
        for &m in &d_members {
            coset_of[p.mul_idx(t, m) as usize] = id;
        }
    }
    let size = reps.len();
    debug_assert_eq!(size * d.order(), p.order());

    let order_h = h.order() as u32;
    let id_g = g.identity_index();
    let id_h = h.identity_index();
    let left_act: Vec<Vec<u32>> = (0..g.order() as u32)
        .map(|a| {
            let amb_a = a * order_h + id_h;
            (0..size)
                .map(|c| coset_of[p.mul_idx(amb_a, reps[c]) as usize])
                .collect()
        })
        .collect();
    let right_act: Vec<Vec<u32>> = (0..h.order() as u32)
        .map(|b| {
            let amb_b_inv = id_g * order_h + h.inv_idx(b);
            (0..size)
                .map(|c| coset_of[p.mul_idx(amb_b_inv, reps[c]) as usize])
                .collect()
        })
        .collect();
    ConcreteBiset {
        left: g,
        right: h,
        size,
        left_act,
        right_act,
    }
}

/// Composition of standard classes computed from first principles:
/// realize, tensor over the middle group, classify orbits by stabilizer.
pub fn tensor_oracle(d: &ProductSubgroup, e: &ProductSubgroup) -> Result<BisetElement> {
    if d.right() != e.left() {
        return Err(Error::CompositionMismatch(
            "classes are not composable".into(),
        ));
    }
    let u = realize(d);
    let v = realize(e);
    Ok(u.tensor(&v)?.classify())
}
