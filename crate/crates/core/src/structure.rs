//! Structure theory of a verified Rota-Baxter system: the component groups
//! G_t = {a : a ∘ e_t = a}, the partition of the carrier into them, the set K
//! of left identities, and the direct-sum decomposition
//! (G,∘) ≅ (G_base ⊕ K, ∘).

use crate::rbs::{
    from_rb_group, verify_group_rb_operator, verify_rbs, OperatorMap, RbWeight, RbsError,
    RbsInstance,
};
use crate::tables::{is_hom, Kind, MulTable, Subset};

/// The partition of a carrier into ∘-component groups, in discovery order
/// (smallest seed element first).
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    pub components: Vec<Subset>,
    /// K = {e_t}, the left identities; a right-zero semigroup under ∘.
    pub e_classes: Subset,
    /// Index into `components` of the component containing e_{1_G}.
    pub base: usize,
}

fn assert_group_carrier(inst: &RbsInstance) {
    assert!(
        inst.carrier().is_group() && inst.e_map().is_some(),
        "structure theory needs a verified system on a group carrier"
    );
}

/// The component G_t = {a : a ∘ e_t = a}. Asserts the alternative description
/// G_t = {a ∘ e_t : a in G} and that G_t is a group under ∘ with identity e_t.
pub fn component_of(inst: &RbsInstance, t: usize) -> Subset {
    assert_group_carrier(inst);
    let n = inst.order();
    let et = inst.left_identity(t);
    let members: Vec<usize> = (0..n).filter(|&a| inst.circ_mul(a, et) == a).collect();
    let component = Subset::new(members, n).expect("members are carrier indices");

    let mut orbit: Vec<usize> = (0..n).map(|a| inst.circ_mul(a, et)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    assert_eq!(component.members(), &orbit[..], "G_t must equal G ∘ e_t");

    assert!(component.contains(et), "e_t must lie in its own component");
    for a in component.iter() {
        assert_eq!(inst.circ_mul(et, a), a, "e_t is the ∘-identity on G_t");
        for b in component.iter() {
            assert!(component.contains(inst.circ_mul(a, b)), "G_t closed under ∘");
        }
        let dag = inst.dagger_of(a);
        // a ∘ a† = e_a = e_t on the component, and a† stays inside
        assert!(component.contains(dag));
        assert_eq!(inst.circ_mul(a, dag), et);
        assert_eq!(inst.circ_mul(dag, a), et);
    }
    component
}

/// Partition of the carrier into components, discovered by iterating seeds in
/// index order and skipping covered elements.
pub fn partition(inst: &RbsInstance) -> ComponentDecomposition {
    assert_group_carrier(inst);
    let n = inst.order();
    let mut covered = vec![false; n];
    let mut components = Vec::new();
    for t in 0..n {
        if covered[t] {
            continue;
        }
        let comp = component_of(inst, t);
        for m in comp.iter() {
            assert!(!covered[m], "components must be pairwise disjoint");
            covered[m] = true;
        }
        components.push(comp);
    }
    assert!(covered.iter().all(|&c| c), "components must cover the carrier");

    let e_map = inst.e_map().expect("group carrier");
    let e_classes =
        Subset::new(e_map.as_slice().to_vec(), n).expect("left identities are carrier indices");
    let e1 = inst.left_identity(inst.carrier().identity_unchecked());
    let base = components
        .iter()
        .position(|c| c.contains(e1))
        .expect("the base left identity lies in some component");
    ComponentDecomposition { components, e_classes, base }
}

/// The isomorphism a ↦ a ∘ e_{t2} between two components.
#[derive(Debug, Clone)]
pub struct ComponentIso {
    pub domain: Subset,
    pub codomain: Subset,
    /// map\[i\] is the image of domain.members()\[i\].
    pub map: Vec<usize>,
}

impl ComponentIso {
    pub fn image_of(&self, a: usize) -> Option<usize> {
        self.domain.pos(a).map(|i| self.map[i])
    }
}

/// Builds and verifies the component isomorphism G_{t1} → G_{t2}. Also
/// asserts G_{t1} ∘ G_{t2} = G_{t2}.
pub fn component_iso(inst: &RbsInstance, t1: usize, t2: usize) -> ComponentIso {
    let domain = component_of(inst, t1);
    let codomain = component_of(inst, t2);
    let et2 = inst.left_identity(t2);
    let map: Vec<usize> = domain.iter().map(|a| inst.circ_mul(a, et2)).collect();

    let mut image: Vec<usize> = map.clone();
    image.sort_unstable();
    image.dedup();
    assert_eq!(image, codomain.members(), "component map must be a bijection onto G_{{t2}}");
    for (i, a) in domain.iter().enumerate() {
        for (j, b) in domain.iter().enumerate() {
            let ab = inst.circ_mul(a, b);
            let pos = domain.pos(ab).expect("G_t1 closed");
            assert_eq!(
                inst.circ_mul(map[i], map[j]),
                map[pos],
                "component map must be a ∘-homomorphism"
            );
        }
    }

    let mut products: Vec<usize> = domain
        .iter()
        .flat_map(|a| codomain.iter().map(move |b| (a, b)))
        .map(|(a, b)| inst.circ_mul(a, b))
        .collect();
    products.sort_unstable();
    products.dedup();
    assert_eq!(products, codomain.members(), "G_t1 ∘ G_t2 must equal G_t2");

    ComponentIso { domain, codomain, map }
}

/// Image of the cocycle restricted to G_t. Asserts it equals the image of the
/// full cocycle and the base component, and that the restriction to the base
/// component is bijective onto it.
pub fn cocycle_image(inst: &RbsInstance, t: usize) -> Subset {
    assert_group_carrier(inst);
    let n = inst.order();
    let comp = component_of(inst, t);
    let mut restricted: Vec<usize> = comp.iter().map(|a| inst.phi().apply(a)).collect();
    restricted.sort_unstable();
    restricted.dedup();

    let mut full: Vec<usize> = (0..n).map(|a| inst.phi().apply(a)).collect();
    full.sort_unstable();
    full.dedup();
    assert_eq!(restricted, full, "Im(Φ_t) must equal Im(Φ)");

    let base = component_of(inst, inst.carrier().identity_unchecked());
    assert_eq!(&full[..], base.members(), "Im(Φ) must be the base component");

    let mut base_images: Vec<usize> = base.iter().map(|a| inst.phi().apply(a)).collect();
    base_images.sort_unstable();
    base_images.dedup();
    assert_eq!(
        &base_images[..],
        base.members(),
        "Φ restricted to the base component must be bijective onto it"
    );

    Subset::new(full, n).expect("image members are carrier indices")
}

/// The decomposition isomorphism Ψ(a) = (a ∘ e_1, e_a) of (G,∘) onto the
/// componentwise-∘ product of the base component and K.
#[derive(Debug, Clone)]
pub struct DirectSumDecomposition {
    pub base: Subset,
    pub k: Subset,
    /// Product semigroup on base × K with pair encoding i*|K| + j.
    pub product: MulTable,
    /// psi\[a\] is the product index of Ψ(a).
    pub psi: Vec<usize>,
}

/// Builds the product semigroup (G_base ⊕ K, ∘) and verifies that Ψ is a
/// bijective semigroup homomorphism onto it.
pub fn direct_sum_decomposition(inst: &RbsInstance) -> DirectSumDecomposition {
    let decomp = partition(inst);
    let base = decomp.components[decomp.base].clone();
    let k = decomp.e_classes.clone();
    let n = inst.order();
    assert_eq!(base.len() * k.len(), n, "|G| must equal |G_base| * |K|");

    // K is a right-zero semigroup under ∘: e_a ∘ e_b = e_b
    for a in k.iter() {
        for b in k.iter() {
            assert_eq!(inst.circ_mul(a, b), b, "K must be right-zero under ∘");
        }
    }

    let (nb, nk) = (base.len(), k.len());
    let order = nb * nk;
    let mut table = vec![0usize; order * order];
    for (i, a) in base.iter().enumerate() {
        for (j, x) in k.iter().enumerate() {
            for (i2, b) in base.iter().enumerate() {
                for (j2, y) in k.iter().enumerate() {
                    let p = base.pos(inst.circ_mul(a, b)).expect("base closed under ∘");
                    let q = k.pos(inst.circ_mul(x, y)).expect("K closed under ∘");
                    table[(i * nk + j) * order + (i2 * nk + j2)] = p * nk + q;
                }
            }
        }
    }
    let product = MulTable::validate(order, table, Kind::Semigroup)
        .expect("componentwise ∘ on base × K is associative");

    let e1 = inst.left_identity(inst.carrier().identity_unchecked());
    let psi: Vec<usize> = (0..n)
        .map(|a| {
            let p = base.pos(inst.circ_mul(a, e1)).expect("a ∘ e_1 lies in the base component");
            let q = k.pos(inst.left_identity(a)).expect("e_a lies in K");
            p * nk + q
        })
        .collect();

    let mut seen = vec![false; order];
    for &v in &psi {
        assert!(!seen[v], "Ψ must be injective");
        seen[v] = true;
    }
    assert!(seen.iter().all(|&s| s), "Ψ must be surjective");
    assert!(is_hom(&psi, inst.circ(), &product), "Ψ must be a semigroup homomorphism");

    DirectSumDecomposition { base, k, product, psi }
}

/// Rota-Baxter system on G ⊕ K induced by a weight-1 operator B on G:
/// B1((a,x)) = (a B(a), 1), B2((a,x)) = (B(a)^{-1}, 1). The partition of the
/// result has exactly |K| components.
pub fn build_direct_sum_rbs(
    g: &MulTable,
    b: &OperatorMap,
    k: &MulTable,
) -> Result<RbsInstance, RbsError> {
    assert!(g.is_group() && k.is_group());
    if !verify_group_rb_operator(g, b, RbWeight::Plus) {
        return Err(RbsError::NotRbOperator { weight: 1 });
    }
    let product = g.direct_sum(k).map_err(|e| RbsError::PreconditionFailed(e.to_string()))?;
    let m = k.order();
    let ek = k.identity_unchecked();
    let n = product.order();
    let b1 = OperatorMap::new(
        (0..n).map(|p| g.mul(p / m, b.apply(p / m)) * m + ek).collect(),
        n,
    )?;
    let b2 = OperatorMap::new((0..n).map(|p| g.inv(b.apply(p / m)) * m + ek).collect(), n)?;
    let inst = verify_rbs(&product, &b1, &b2)
        .expect("weight-1 operators induce a Rota-Baxter system on the direct sum");
    let decomp = partition(&inst);
    assert_eq!(decomp.components.len(), m, "direct-sum system must have |K| components");
    Ok(inst)
}

// sanity check used by callers that already hold an instance
pub fn reduces_to_rb_group(inst: &RbsInstance, g: &MulTable, b: &OperatorMap) -> bool {
    match from_rb_group(g, b) {
        Ok(plain) => {
            plain.b1().as_slice() == inst.b1().as_slice()
                && plain.b2().as_slice() == inst.b2().as_slice()
        }
        Err(_) => false,
    }
}
