//! Finite magma/monoid/group engine: multiplication tables, subobjects,
//! quotients, morphism predicates and product constructions.
//!
//! Elements are dense indices `0..n`; names live only in I/O metadata.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be positive")]
    EmptyCarrier,
    #[error("table must be {order}x{order}")]
    BadShape { order: usize },
    #[error("entry ({a},{b}) = {value} is out of range for order {order}")]
    IndexOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("elements {first} and {second} are both two-sided identities")]
    MultipleIdentities { first: usize, second: usize },
    #[error("element {element} has no two-sided inverse")]
    NotInvertible { element: usize },
    #[error("member {member} is not an index of the carrier")]
    BadSubsetMember { member: usize },
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subset is not normal in the ambient subgroup")]
    NotNormal,
    #[error("subset is not closed: {a}*{b} lands outside")]
    NotClosed { a: usize, b: usize },
    #[error("operation requires kind {required:?}, carrier is {actual:?}")]
    KindRequired { required: Kind, actual: Kind },
}

/// How much structure a table is claimed (and verified) to carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Magma,
    Semigroup,
    Monoid,
    Group,
}

/// A finite magma/semigroup/monoid/group as an order-n multiplication table.
///
/// Validated tables are immutable and safely shareable; every operation on
/// them is a pure function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    table: Vec<usize>, // row-major n*n
    kind: Kind,
    identity: Option<usize>,
    inverses: Option<Vec<usize>>,
}

impl MulTable {
    /// Validates a raw table against the claimed kind. Associativity is the
    /// naive n^3 loop (n stays small in all intended uses); identity and
    /// inverses are filled in whenever derivable, even for weaker kinds.
    pub fn validate(order: usize, table: Vec<usize>, kind: Kind) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::EmptyCarrier);
        }
        if table.len() != order * order {
            return Err(TableError::BadShape { order });
        }
        for a in 0..order {
            for b in 0..order {
                let v = table[a * order + b];
                if v >= order {
                    return Err(TableError::IndexOutOfRange { a, b, value: v, order });
                }
            }
        }
        let mut t = MulTable { order, table, kind, identity: None, inverses: None };
        if kind >= Kind::Semigroup {
            t.check_associative()?;
        }
        // Identity scan over rows/columns. Two distinct two-sided identities
        // cannot coexist in an associative table; magmas can fake them, so
        // reject outright.
        let ids: Vec<usize> = (0..order)
            .filter(|&e| (0..order).all(|a| t.mul(e, a) == a && t.mul(a, e) == a))
            .collect();
        if ids.len() > 1 {
            return Err(TableError::MultipleIdentities { first: ids[0], second: ids[1] });
        }
        t.identity = ids.first().copied();
        if kind >= Kind::Monoid && t.identity.is_none() {
            return Err(TableError::NoIdentity);
        }
        if let Some(e) = t.identity {
            let mut inv = Vec::with_capacity(order);
            for a in 0..order {
                match (0..order).find(|&x| t.mul(a, x) == e && t.mul(x, a) == e) {
                    Some(x) => inv.push(x),
                    None if kind == Kind::Group => {
                        return Err(TableError::NotInvertible { element: a })
                    }
                    None => {
                        inv.clear();
                        break;
                    }
                }
            }
            if inv.len() == order {
                t.inverses = Some(inv);
            }
        }
        Ok(t)
    }

    fn check_associative(&self) -> Result<(), TableError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(TableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// a*b*c, left to right.
    #[inline]
    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    /// Identity element; panics when the table has none.
    pub fn identity_unchecked(&self) -> usize {
        self.identity.expect("carrier has no identity element")
    }

    /// Inverse of a; panics when inverses are absent.
    pub fn inv(&self, a: usize) -> usize {
        self.inverses.as_ref().expect("carrier has no inverses")[a]
    }

    pub fn inverses(&self) -> Option<&[usize]> {
        self.inverses.as_deref()
    }

    pub fn is_group(&self) -> bool {
        self.kind == Kind::Group
    }

    pub fn require_kind(&self, required: Kind) -> Result<(), TableError> {
        if self.kind >= required {
            Ok(())
        } else {
            Err(TableError::KindRequired { required, actual: self.kind })
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec()).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    /// Center Z = {z : za = az for all a}. Requires a group carrier.
    pub fn center(&self) -> Subset {
        let members =
            (0..self.order).filter(|&z| (0..self.order).all(|a| self.mul(z, a) == self.mul(a, z)));
        Subset::new(members.collect(), self.order).expect("center members are valid indices")
    }

    /// Table with reversed multiplication: a *_op b = b * a.
    pub fn opposite(&self) -> MulTable {
        let n = self.order;
        let table = (0..n).flat_map(|a| (0..n).map(move |b| self.mul(b, a))).collect();
        MulTable::validate(n, table, self.kind).expect("opposite preserves the kind")
    }

    /// Componentwise product on pairs, encoded as i*|K| + j. Both operands
    /// must be monoids or groups.
    pub fn direct_sum(&self, other: &MulTable) -> Result<MulTable, TableError> {
        self.require_kind(Kind::Monoid)?;
        other.require_kind(Kind::Monoid)?;
        let (n, m) = (self.order, other.order);
        let mut table = vec![0usize; (n * m) * (n * m)];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        let x = a * m + b;
                        let y = c * m + d;
                        table[x * (n * m) + y] = self.mul(a, c) * m + other.mul(b, d);
                    }
                }
            }
        }
        let kind = self.kind.min(other.kind);
        Ok(MulTable::validate(n * m, table, kind).expect("product of validated operands is valid"))
    }

    /// Cyclic group of order n, a*b = a+b mod n.
    pub fn cyclic(n: usize) -> MulTable {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        MulTable::validate(n, table, Kind::Group).expect("cyclic table is a group")
    }

    /// The one-element group.
    pub fn trivial() -> MulTable {
        MulTable::cyclic(1)
    }

    /// Klein four-group as Z2 x Z2.
    pub fn klein_four() -> MulTable {
        MulTable::cyclic(2).direct_sum(&MulTable::cyclic(2)).expect("Z2 + Z2 is a group")
    }

    /// Symmetric group S_n on the n! permutations of {0..n}, listed in
    /// lexicographic order and composed as (p*q)(x) = p(q(x)).
    pub fn symmetric(n: usize) -> MulTable {
        let perms = permutations(n);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let order = perms.len();
        let mut table = vec![0usize; order * order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i * order + j] = index_of(&composed);
            }
        }
        MulTable::validate(order, table, Kind::Group).expect("permutation composition is a group")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn go(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(k + 1, items, out);
            items.swap(k, i);
        }
        // restore lexicographic order: the swap scheme above does not emit in
        // lex order, so sort at the caller
    }
    go(0, &mut items, &mut out);
    out.sort();
    out
}

/// A subset of a carrier, stored as a sorted duplicate-free index sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    members: Vec<usize>,
}

impl Subset {
    pub fn new(mut members: Vec<usize>, order: usize) -> Result<Self, TableError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= order) {
            return Err(TableError::BadSubsetMember { member: m });
        }
        Ok(Subset { members })
    }

    pub fn full(order: usize) -> Self {
        Subset { members: (0..order).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of x in the sorted member list.
    pub fn pos(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

/// Closure + identity + inverses. Requires a group carrier.
pub fn is_subgroup(g: &MulTable, s: &Subset) -> bool {
    assert!(g.is_group(), "is_subgroup needs a group carrier");
    if s.is_empty() {
        return false;
    }
    let e = g.identity_unchecked();
    s.contains(e)
        && s.iter().all(|a| s.contains(g.inv(a)))
        && s.iter().all(|a| s.iter().all(|b| s.contains(g.mul(a, b))))
}

/// Normality of s inside the ambient subgroup: g s g^{-1} ⊆ s for every g in
/// ambient.
pub fn is_normal_in(g: &MulTable, ambient: &Subset, s: &Subset) -> bool {
    ambient
        .iter()
        .all(|a| s.iter().all(|x| s.contains(g.mul3(a, x, g.inv(a)))))
}

/// Normality inside the whole carrier.
pub fn is_normal(g: &MulTable, s: &Subset) -> bool {
    is_normal_in(g, &Subset::full(g.order()), s)
}

/// A quotient of a subgroup by a normal subgroup: coset lists, deterministic
/// representatives (smallest index in each coset) and the group table on
/// coset indices.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub parent: Subset,
    pub normal: Subset,
    pub cosets: Vec<Vec<usize>>,
    pub table: MulTable,
    pub rep: Vec<usize>,
    coset_index: Vec<Option<usize>>,
}

impl QuotientGroup {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing x, for x in the parent subgroup.
    pub fn coset_of(&self, x: usize) -> Option<usize> {
        self.coset_index.get(x).copied().flatten()
    }
}

/// Coset decomposition of `ambient / normal`.
pub fn quotient(g: &MulTable, ambient: &Subset, normal: &Subset) -> Result<QuotientGroup, TableError> {
    g.require_kind(Kind::Group)?;
    if !is_subgroup(g, ambient) || !is_subgroup(g, normal) {
        return Err(TableError::NotSubgroup);
    }
    if !normal.iter().all(|x| ambient.contains(x)) {
        return Err(TableError::NotSubgroup);
    }
    if !is_normal_in(g, ambient, normal) {
        return Err(TableError::NotNormal);
    }
    let mut coset_index: Vec<Option<usize>> = vec![None; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut rep = Vec::new();
    for a in ambient.iter() {
        if coset_index[a].is_some() {
            continue;
        }
        let mut coset: Vec<usize> = normal.iter().map(|x| g.mul(a, x)).collect();
        coset.sort_unstable();
        // iterating ambient in ascending order makes coset[0] == a, the
        // smallest member: deterministic representatives
        for &m in &coset {
            coset_index[m] = Some(cosets.len());
        }
        rep.push(coset[0]);
        cosets.push(coset);
    }
    let q = cosets.len();
    let mut table = vec![0usize; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] =
                coset_index[g.mul(rep[i], rep[j])].expect("products of reps stay in the parent");
        }
    }
    let table = MulTable::validate(q, table, Kind::Group)?;
    Ok(QuotientGroup { parent: ambient.clone(), normal: normal.clone(), cosets, table, rep, coset_index })
}

/// Reindexes a closed subset as its own table, claiming the given kind.
pub fn subset_table(g: &MulTable, s: &Subset, kind: Kind) -> Result<MulTable, TableError> {
    let n = s.len();
    let mut table = vec![0usize; n * n];
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            let p = g.mul(a, b);
            let Some(k) = s.pos(p) else {
                return Err(TableError::NotClosed { a, b });
            };
            table[i * n + j] = k;
        }
    }
    MulTable::validate(n, table, kind)
}

/// Group on index pairs of two subgroups with product
/// (a1,a2)*(b1,b2) = (a1 b1, b2 a2); pairs are encoded as i*|G2| + j.
pub fn twisted_product(g: &MulTable, g1: &Subset, g2: &Subset) -> Result<MulTable, TableError> {
    if !is_subgroup(g, g1) || !is_subgroup(g, g2) {
        return Err(TableError::NotSubgroup);
    }
    let (n1, n2) = (g1.len(), g2.len());
    let order = n1 * n2;
    let mut table = vec![0usize; order * order];
    for (i, a1) in g1.iter().enumerate() {
        for (j, a2) in g2.iter().enumerate() {
            for (k, b1) in g1.iter().enumerate() {
                for (l, b2) in g2.iter().enumerate() {
                    let p1 = g1.pos(g.mul(a1, b1)).expect("G1 closed");
                    let p2 = g2.pos(g.mul(b2, a2)).expect("G2 closed");
                    table[(i * n2 + j) * order + (k * n2 + l)] = p1 * n2 + p2;
                }
            }
        }
    }
    MulTable::validate(order, table, Kind::Group)
}

/// f(ab) = f(a)f(b) for all pairs. f maps src indices to dst indices; src may
/// be any magma (the predicate is used with raw descendent tables too).
pub fn is_hom(f: &[usize], src: &MulTable, dst: &MulTable) -> bool {
    assert_eq!(f.len(), src.order(), "map length must equal src order");
    assert!(f.iter().all(|&v| v < dst.order()), "map values must be dst indices");
    (0..src.order()).all(|a| {
        (0..src.order()).all(|b| f[src.mul(a, b)] == dst.mul(f[a], f[b]))
    })
}

/// f(ab) = f(b)f(a) for all pairs.
pub fn is_anti_hom(f: &[usize], src: &MulTable, dst: &MulTable) -> bool {
    assert_eq!(f.len(), src.order(), "map length must equal src order");
    assert!(f.iter().all(|&v| v < dst.order()), "map values must be dst indices");
    (0..src.order()).all(|a| {
        (0..src.order()).all(|b| f[src.mul(a, b)] == dst.mul(f[b], f[a]))
    })
}

/// Bijectivity by image cardinality (for self-maps of a finite carrier).
pub fn is_bijective(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    for &v in f {
        if v >= f.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
