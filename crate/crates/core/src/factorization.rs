//! Factorization theory of a verified Rota-Baxter system on a group:
//! the image subgroups G1, G2, the normal subgroups H1 = B1(Ker B2) and
//! H2 = B2(Ker B1), the Cayley transform Θ between the quotients, the
//! subgroup G_Θ of the twisted product, and unique factorization of base
//! elements as a = a1 a2 with (a1, a2) in G_Θ.

use crate::rbs::RbsInstance;
use crate::structure::component_of;
use crate::tables::{
    is_normal_in, is_subgroup, quotient, twisted_product, MulTable, QuotientGroup, Subset,
};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FactorizationError {
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    #[error("element {element} is not in the image of the cocycle")]
    NotInImage { element: usize },
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(FactorizationError::InternalAssertion(format!($($msg)*)));
        }
    };
}

/// All derived factorization data of one instance.
#[derive(Debug, Clone)]
pub struct FactorizationData {
    pub g1: Subset,
    pub g2: Subset,
    pub ker_b1: Subset,
    pub ker_b2: Subset,
    pub h1: Subset,
    pub h2: Subset,
    pub q1: QuotientGroup,
    pub q2: QuotientGroup,
    /// Coset map Q1 → Q2 of the Cayley transform.
    pub theta: Vec<usize>,
    /// Element pairs (a1, a2) with Θ(coset a1) = coset a2, sorted.
    pub g_theta: Vec<(usize, usize)>,
    /// The ambient twisted product (G1 × G2, ·_D).
    pub twisted: MulTable,
    /// Base component G_{1_G} = Im(Φ).
    pub base: Subset,
    phi_inv_base: Vec<Option<usize>>,
}

impl FactorizationData {
    /// Position of an element pair inside the twisted product table.
    pub fn pair_index(&self, a1: usize, a2: usize) -> Option<usize> {
        let p1 = self.g1.pos(a1)?;
        let p2 = self.g2.pos(a2)?;
        Some(p1 * self.g2.len() + p2)
    }

    pub fn in_g_theta(&self, a1: usize, a2: usize) -> bool {
        self.g_theta.binary_search(&(a1, a2)).is_ok()
    }
}

fn image_of_map(map: &[usize], domain: impl Iterator<Item = usize>, n: usize) -> Subset {
    let members: Vec<usize> = domain.map(|a| map[a]).collect();
    Subset::new(members, n).expect("map values are carrier indices")
}

/// Computes all factorization data. Every theorem along the way is asserted;
/// a failure indicates an implementation bug and is surfaced loudly.
pub fn build_factorization(inst: &RbsInstance) -> Result<FactorizationData, FactorizationError> {
    let g = inst.carrier();
    assert!(g.is_group(), "factorization needs a group carrier");
    let n = g.order();
    let e = g.identity_unchecked();
    let b1 = inst.b1();
    let b2 = inst.b2();

    let g1 = image_of_map(b1.as_slice(), 0..n, n);
    let g2 = image_of_map(b2.as_slice(), 0..n, n);
    ensure!(is_subgroup(g, &g1), "Im(B1) must be a subgroup");
    ensure!(is_subgroup(g, &g2), "Im(B2) must be a subgroup");

    let ker_b1 = Subset::new((0..n).filter(|&a| b1.apply(a) == e).collect(), n).unwrap();
    let ker_b2 = Subset::new((0..n).filter(|&a| b2.apply(a) == e).collect(), n).unwrap();
    let h1 = image_of_map(b1.as_slice(), ker_b2.iter(), n);
    let h2 = image_of_map(b2.as_slice(), ker_b1.iter(), n);
    ensure!(h1.iter().all(|x| g1.contains(x)), "H1 must sit inside G1");
    ensure!(h2.iter().all(|x| g2.contains(x)), "H2 must sit inside G2");
    ensure!(is_subgroup(g, &h1), "H1 must be a subgroup");
    ensure!(is_subgroup(g, &h2), "H2 must be a subgroup");

    // Normality, twice: direct conjugation ...
    ensure!(is_normal_in(g, &g1, &h1), "H1 must be normal in G1");
    ensure!(is_normal_in(g, &g2, &h2), "H2 must be normal in G2");
    // ... and via the solvability route: a ∘ c = b ∘ a with the kernel
    // element c staying in the kernel, which rewrites gh as h'g.
    for a in 0..n {
        for b in ker_b1.iter() {
            let ba = inst.circ_mul(b, a);
            let c = g.mul3(g.inv(b1.apply(a)), ba, g.inv(b2.apply(a)));
            ensure!(ker_b1.contains(c), "solvability witness must stay in Ker(B1)");
            ensure!(
                g.mul(b2.apply(c), b2.apply(a)) == g.mul(b2.apply(a), b2.apply(b)),
                "B2(c)B2(a) must equal B2(a)B2(b)"
            );
        }
        for b in ker_b2.iter() {
            let ba = inst.circ_mul(b, a);
            let c = g.mul3(g.inv(b1.apply(a)), ba, g.inv(b2.apply(a)));
            ensure!(ker_b2.contains(c), "solvability witness must stay in Ker(B2)");
            ensure!(
                g.mul(b1.apply(a), b1.apply(c)) == g.mul(b1.apply(b), b1.apply(a)),
                "B1(a)B1(c) must equal B1(b)B1(a)"
            );
        }
    }

    let q1 = quotient(g, &g1, &h1)
        .map_err(|e| FactorizationError::InternalAssertion(e.to_string()))?;
    let q2 = quotient(g, &g2, &h2)
        .map_err(|e| FactorizationError::InternalAssertion(e.to_string()))?;

    // Θ(coset of B1(a)) = coset of B2(a); well-definedness is checked by
    // scanning every a.
    let mut theta: Vec<Option<usize>> = vec![None; q1.len()];
    for a in 0..n {
        let c1 = q1.coset_of(b1.apply(a)).expect("B1(a) lies in G1");
        let c2 = q2.coset_of(b2.apply(a)).expect("B2(a) lies in G2");
        match theta[c1] {
            None => theta[c1] = Some(c2),
            Some(prev) => ensure!(prev == c2, "Cayley transform must be well-defined"),
        }
    }
    let theta: Vec<usize> = theta
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| FactorizationError::InternalAssertion("Θ must be total".into()))?;
    ensure!(q1.len() == q2.len(), "quotients must have equal order");
    let mut seen = vec![false; q2.len()];
    for &t in &theta {
        ensure!(!seen[t], "Θ must be injective");
        seen[t] = true;
    }
    for i in 0..q1.len() {
        for j in 0..q1.len() {
            ensure!(
                theta[q1.table.mul(i, j)] == q2.table.mul(theta[j], theta[i]),
                "Θ must be an anti-homomorphism"
            );
        }
    }

    let mut g_theta: Vec<(usize, usize)> = Vec::new();
    for x in g1.iter() {
        for y in g2.iter() {
            if theta[q1.coset_of(x).unwrap()] == q2.coset_of(y).unwrap() {
                g_theta.push((x, y));
            }
        }
    }
    g_theta.sort_unstable();

    let twisted = twisted_product(g, &g1, &g2)
        .map_err(|e| FactorizationError::InternalAssertion(e.to_string()))?;
    let indices: Vec<usize> = g_theta
        .iter()
        .map(|&(x, y)| g1.pos(x).unwrap() * g2.len() + g2.pos(y).unwrap())
        .collect();
    let g_theta_subset =
        Subset::new(indices, twisted.order()).expect("pair indices are in range");
    ensure!(
        is_subgroup(&twisted, &g_theta_subset),
        "G_Θ must be a subgroup of the twisted product"
    );

    let base = component_of(inst, e);
    let mut phi_inv_base: Vec<Option<usize>> = vec![None; n];
    for x in base.iter() {
        let img = inst.phi().apply(x);
        ensure!(base.contains(img), "Φ must map the base component into itself");
        ensure!(phi_inv_base[img].is_none(), "Φ must be injective on the base component");
        phi_inv_base[img] = Some(x);
    }
    ensure!(
        base.iter().all(|x| phi_inv_base[x].is_some()),
        "Φ must be surjective onto the base component"
    );

    Ok(FactorizationData {
        g1,
        g2,
        ker_b1,
        ker_b2,
        h1,
        h2,
        q1,
        q2,
        theta,
        g_theta,
        twisted,
        base,
        phi_inv_base,
    })
}

/// The embedding Ψ(a) = (B1(a), B2(a)) of the base component into G_Θ.
#[derive(Debug, Clone)]
pub struct PairEmbedding {
    pub domain: Subset,
    /// pairs\[i\] = (B1(a), B2(a)) for a = domain.members()\[i\].
    pub pairs: Vec<(usize, usize)>,
}

/// Builds Ψ and verifies it is a group isomorphism onto (G_Θ, ·_D).
pub fn pair_embedding(
    inst: &RbsInstance,
    fd: &FactorizationData,
) -> Result<PairEmbedding, FactorizationError> {
    let g = inst.carrier();
    let pairs: Vec<(usize, usize)> =
        fd.base.iter().map(|a| (inst.b1().apply(a), inst.b2().apply(a))).collect();
    for &(x, y) in &pairs {
        ensure!(fd.in_g_theta(x, y), "Ψ image must lie in G_Θ");
    }
    let mut dedup = pairs.clone();
    dedup.sort_unstable();
    dedup.dedup();
    ensure!(dedup.len() == pairs.len(), "Ψ must be injective");
    ensure!(dedup == fd.g_theta, "Ψ must be surjective onto G_Θ");
    for (i, a) in fd.base.iter().enumerate() {
        for (j, b) in fd.base.iter().enumerate() {
            let ab = inst.circ_mul(a, b);
            let pos = fd.base.pos(ab).expect("base closed under ∘");
            let product =
                (g.mul(pairs[i].0, pairs[j].0), g.mul(pairs[j].1, pairs[i].1));
            ensure!(
                pairs[pos] == product,
                "Ψ must be a homomorphism into the twisted product"
            );
        }
    }
    Ok(PairEmbedding { domain: fd.base.clone(), pairs })
}

/// Unique factorization a = a1 a2 with (a1, a2) in G_Θ, for a in the image of
/// the cocycle. Uniqueness is asserted by brute force over all of G_Θ.
pub fn factorize_element(
    inst: &RbsInstance,
    fd: &FactorizationData,
    a: usize,
) -> Result<(usize, usize), FactorizationError> {
    if !fd.base.contains(a) {
        return Err(FactorizationError::NotInImage { element: a });
    }
    let b = fd.phi_inv_base[a].expect("Φ is bijective on the base component");
    let pair = (inst.b1().apply(b), inst.b2().apply(b));
    let g = inst.carrier();
    let matches: Vec<(usize, usize)> =
        fd.g_theta.iter().copied().filter(|&(x, y)| g.mul(x, y) == a).collect();
    ensure!(
        matches == vec![pair],
        "factorization of {a} must be unique in G_Θ, found {matches:?}"
    );
    Ok(pair)
}
