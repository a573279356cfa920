//! Standard constructions used by fixtures, tests and the acceptance corpus.

use super::{FiniteGroupoid, GroupoidBuilder};
use crate::rings::GroupTable;

fn finish(b: GroupoidBuilder) -> FiniteGroupoid {
    b.build()
}

impl FiniteGroupoid {
    /// The pair groupoid on `n` objects `x0..`: exactly one arrow `xj>xi`
    /// from each object to each other one.
    pub fn pair(n: usize) -> Self {
        let obj = |i: usize| format!("x{i}");
        let arrow = |i: usize, j: usize| if i == j { format!("id_x{i}") } else { format!("x{i}>x{j}") };
        let mut b = GroupoidBuilder::new();
        for i in 0..n {
            b.object(&obj(i)).expect("fresh object");
        }
        for i in 0..n {
            for j in 0..n {
                b.arrow(&arrow(i, j), &obj(i), &obj(j)).expect("fresh arrow");
            }
        }
        for i in 0..n {
            b.identity(&obj(i), &arrow(i, i)).expect("identity");
            for j in 0..n {
                b.inverse(&arrow(i, j), &arrow(j, i)).expect("inverse");
                for k in 0..n {
                    // (j -> k) after (i -> j)
                    b.compose(&arrow(j, k), &arrow(i, j), &arrow(i, k)).expect("composable");
                }
            }
        }
        finish(b)
    }

    /// A group as a one-object groupoid; arrows carry the table's labels.
    pub fn from_group(group: &GroupTable, object: &str) -> Self {
        let mut b = GroupoidBuilder::new();
        b.object(object).expect("fresh object");
        let n = group.order();
        for g in 0..n {
            b.arrow(group.label(g), object, object).expect("distinct labels");
        }
        b.identity(object, group.label(group.identity())).expect("identity");
        for g in 0..n {
            b.inverse(group.label(g), group.label(group.inverse(g))).expect("inverse");
            for h in 0..n {
                b.compose(group.label(g), group.label(h), group.label(group.mul(g, h))).expect("composable");
            }
        }
        finish(b)
    }

    /// Cartesian product; object and arrow names are `(left,right)`.
    /// Both factors must be valid.
    pub fn product(&self, other: &FiniteGroupoid) -> Self {
        let pair = |a: &str, b: &str| format!("({a},{b})");
        let mut b = GroupoidBuilder::new();
        for x in &self.objects {
            for y in &other.objects {
                b.object(&pair(x, y)).expect("fresh object");
            }
        }
        for f in &self.arrows {
            for g in &other.arrows {
                b.arrow(
                    &pair(&f.name, &g.name),
                    &pair(&self.objects[f.dom], &other.objects[g.dom]),
                    &pair(&self.objects[f.cod], &other.objects[g.cod]),
                )
                .expect("fresh arrow");
            }
        }
        for (x, idx) in self.identities.iter().enumerate() {
            for (y, idy) in other.identities.iter().enumerate() {
                let (idx, idy) = (idx.expect("valid factor"), idy.expect("valid factor"));
                b.identity(
                    &pair(&self.objects[x], &other.objects[y]),
                    &pair(self.arrow_name(idx), other.arrow_name(idy)),
                )
                .expect("identity");
            }
        }
        for (f, finv) in self.inverses.iter().enumerate() {
            for (g, ginv) in other.inverses.iter().enumerate() {
                let (finv, ginv) = (finv.expect("valid factor"), ginv.expect("valid factor"));
                b.inverse(
                    &pair(self.arrow_name(f), other.arrow_name(g)),
                    &pair(self.arrow_name(finv), other.arrow_name(ginv)),
                )
                .expect("inverse");
            }
        }
        for (&(f1, f2), &fp) in &self.composition {
            for (&(g1, g2), &gp) in &other.composition {
                b.compose(
                    &pair(self.arrow_name(f1), other.arrow_name(g1)),
                    &pair(self.arrow_name(f2), other.arrow_name(g2)),
                    &pair(self.arrow_name(fp), other.arrow_name(gp)),
                )
                .expect("composable");
            }
        }
        finish(b)
    }

    /// Disjoint union; names are prefixed `A_` (self) and `B_` (other).
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let mut b = GroupoidBuilder::new();
        for (prefix, g) in [("A_", self), ("B_", other)] {
            for o in &g.objects {
                b.object(&format!("{prefix}{o}")).expect("fresh object");
            }
        }
        for (prefix, g) in [("A_", self), ("B_", other)] {
            let n = |a: usize| format!("{prefix}{}", g.arrow_name(a));
            for a in &g.arrows {
                b.arrow(
                    &format!("{prefix}{}", a.name),
                    &format!("{prefix}{}", g.objects[a.dom]),
                    &format!("{prefix}{}", g.objects[a.cod]),
                )
                .expect("fresh arrow");
            }
            for (o, id) in g.identities.iter().enumerate() {
                if let Some(id) = id {
                    b.identity(&format!("{prefix}{}", g.objects[o]), &n(*id)).expect("identity");
                }
            }
            for (a, inv) in g.inverses.iter().enumerate() {
                if let Some(inv) = inv {
                    b.inverse(&n(a), &n(*inv)).expect("inverse");
                }
            }
            for (&(x, y), &p) in &g.composition {
                b.compose(&n(x), &n(y), &n(p)).expect("composable");
            }
        }
        finish(b)
    }

    /// Action groupoid of `group` acting by left multiplication on the
    /// disjoint union of the coset spaces `G/H` for the given subgroups.
    /// Arrow `g@c` goes from coset `c` to `g·c`.
    pub fn action_on_cosets(group: &GroupTable, subgroups: &[Vec<usize>]) -> Self {
        let n = group.order();
        // points: (family, sorted coset)
        let mut points: Vec<(usize, Vec<usize>)> = Vec::new();
        for (j, h) in subgroups.iter().enumerate() {
            for g in 0..n {
                let mut coset: Vec<usize> = h.iter().map(|&x| group.mul(g, x)).collect();
                coset.sort_unstable();
                if !points.iter().any(|(k, c)| *k == j && *c == coset) {
                    points.push((j, coset));
                }
            }
        }
        let name = |p: usize| {
            let (j, _) = &points[p];
            let k = points[..p].iter().filter(|(i, _)| i == j).count();
            format!("c{j}_{k}")
        };
        let act = |g: usize, p: usize| {
            let (j, coset) = &points[p];
            let mut image: Vec<usize> = coset.iter().map(|&x| group.mul(g, x)).collect();
            image.sort_unstable();
            points.iter().position(|(i, c)| i == j && *c == image).expect("cosets are permuted")
        };
        let arrow = |g: usize, p: usize| format!("{}@{}", group.label(g), name(p));
        let mut b = GroupoidBuilder::new();
        for p in 0..points.len() {
            b.object(&name(p)).expect("fresh object");
        }
        for p in 0..points.len() {
            for g in 0..n {
                b.arrow(&arrow(g, p), &name(p), &name(act(g, p))).expect("fresh arrow");
            }
        }
        for p in 0..points.len() {
            b.identity(&name(p), &arrow(group.identity(), p)).expect("identity");
            for g in 0..n {
                let gi = group.inverse(g);
                b.inverse(&arrow(g, p), &arrow(gi, act(g, p))).expect("inverse");
                for h in 0..n {
                    b.compose(&arrow(g, act(h, p)), &arrow(h, p), &arrow(group.mul(g, h), p)).expect("composable");
                }
            }
        }
        finish(b)
    }
}

/// All subgroups of a small group, by brute force over subsets containing
/// the identity (orders up to 12).
pub fn subgroups(group: &GroupTable) -> Vec<Vec<usize>> {
    let n = group.order();
    assert!(n <= 12, "subgroup enumeration is exponential");
    let e = group.identity();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << e) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !n.is_multiple_of(members.len()) {
            continue;
        }
        let closed = members.iter().all(|&a| members.iter().all(|&b| mask & (1 << group.mul(a, b)) != 0));
        if closed {
            out.push(members);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_sizes() {
        for n in 1..=4 {
            let g = FiniteGroupoid::pair(n);
            assert_eq!(g.arrow_count(), n * n);
            assert!(g.validate().is_empty());
        }
    }

    #[test]
    fn product_with_a_group() {
        let g = FiniteGroupoid::pair(2).product(&FiniteGroupoid::from_group(&GroupTable::cyclic(2), "*"));
        assert_eq!(g.arrow_count(), 8);
        assert_eq!(g.object_count(), 2);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn action_groupoids_are_valid() {
        let s3 = GroupTable::symmetric(3);
        let subs = subgroups(&s3);
        assert_eq!(subs.len(), 6);
        for h in &subs {
            let g = FiniteGroupoid::action_on_cosets(&s3, std::slice::from_ref(h));
            assert_eq!(g.object_count(), 6 / h.len());
            assert_eq!(g.arrow_count(), 6 * g.object_count());
            assert!(g.validate().is_empty());
        }
    }

    #[test]
    fn disjoint_union_is_valid() {
        let g = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::from_group(&GroupTable::cyclic(3), "*"));
        assert_eq!(g.arrow_count(), 7);
        assert!(g.validate().is_empty());
    }
}
