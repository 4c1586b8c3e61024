//! Composite statistics groups: the permutations leaving a statistics
//! assignment invariant, together with their ±1 characters.
//!
//! Leaves assign antisymmetric (`a_k`) or symmetric (`s_k`) statistics to
//! a block of particles; products juxtapose disjoint blocks; exchange
//! nodes additionally permute structurally identical blocks wholesale,
//! signed for `a`-type exchange and unsigned for `s`-type.

use std::collections::{BTreeMap, BTreeSet};

use super::{factorial, permutations, Permutation};
use crate::{Error, Result};

/// Largest total particle count for group enumeration.
pub const MAX_COMPOSE_PARTICLES: usize = 8;

/// Statistics kind carried by leaves and exchange nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    /// Antisymmetric: permutations act with their sign.
    Fermi,
    /// Symmetric: permutations act with character +1.
    Bose,
}

/// Statistics assignment over blocks of particle indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatisticsTree {
    Leaf {
        kind: StatKind,
        particles: Vec<usize>,
    },
    Product(Vec<StatisticsTree>),
    Exchange {
        kind: StatKind,
        children: Vec<StatisticsTree>,
    },
}

impl StatisticsTree {
    /// Antisymmetric leaf over the given particles.
    pub fn a(particles: Vec<usize>) -> Self {
        StatisticsTree::Leaf {
            kind: StatKind::Fermi,
            particles,
        }
    }

    /// Symmetric leaf over the given particles.
    pub fn s(particles: Vec<usize>) -> Self {
        StatisticsTree::Leaf {
            kind: StatKind::Bose,
            particles,
        }
    }

    /// Particle indices of the subtree in depth-first order.
    pub fn particles(&self) -> Vec<usize> {
        match self {
            StatisticsTree::Leaf { particles, .. } => particles.clone(),
            StatisticsTree::Product(children) | StatisticsTree::Exchange { children, .. } => {
                children.iter().flat_map(|c| c.particles()).collect()
            }
        }
    }

    /// Structural equality ignoring the concrete particle indices.
    fn shape_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                StatisticsTree::Leaf {
                    kind: ka,
                    particles: pa,
                },
                StatisticsTree::Leaf {
                    kind: kb,
                    particles: pb,
                },
            ) => ka == kb && pa.len() == pb.len(),
            (StatisticsTree::Product(ca), StatisticsTree::Product(cb)) => {
                ca.len() == cb.len() && ca.iter().zip(cb).all(|(x, y)| x.shape_eq(y))
            }
            (
                StatisticsTree::Exchange {
                    kind: ka,
                    children: ca,
                },
                StatisticsTree::Exchange {
                    kind: kb,
                    children: cb,
                },
            ) => ka == kb && ca.len() == cb.len() && ca.iter().zip(cb).all(|(x, y)| x.shape_eq(y)),
            _ => false,
        }
    }
}

/// The invariance group of a statistics assignment: permutations of all
/// `n` particles with their ±1 characters.
#[derive(Debug, Clone)]
pub struct GroupDescription {
    n: usize,
    elements: Vec<(Permutation, i8)>,
}

impl GroupDescription {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[(Permutation, i8)] {
        &self.elements
    }

    /// Character of an element, if the permutation belongs to the group.
    pub fn character(&self, perm: &Permutation) -> Option<i8> {
        self.elements
            .iter()
            .find(|(p, _)| p == perm)
            .map(|&(_, chi)| chi)
    }

    /// Exhaustive check over the full multiplication table: every product
    /// stays in the group and characters multiply.
    pub fn closure_table_ok(&self) -> bool {
        let chars: BTreeMap<&[usize], i8> = self
            .elements
            .iter()
            .map(|(p, chi)| (p.mapping(), *chi))
            .collect();
        for (g, chi_g) in &self.elements {
            for (h, chi_h) in &self.elements {
                let gh = match g.compose(h) {
                    Ok(gh) => gh,
                    Err(_) => return false,
                };
                match chars.get(gh.mapping()) {
                    Some(&chi) if chi == chi_g * chi_h => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

struct RawGroup {
    elements: Vec<(Permutation, i8)>,
    generators: Vec<(Permutation, i8)>,
}

fn leaf_group(n: usize, kind: StatKind, particles: &[usize]) -> Result<RawGroup> {
    if particles.is_empty() {
        return Err(Error::MalformedTree("empty leaf block".into()));
    }
    let k = particles.len();
    let mut elements = Vec::with_capacity(factorial(k));
    for g in permutations(k)? {
        let mut map: Vec<usize> = (0..n).collect();
        for (pos, &p) in particles.iter().enumerate() {
            map[p] = particles[g.apply(pos)];
        }
        let chi = match kind {
            StatKind::Fermi => g.parity(),
            StatKind::Bose => 1,
        };
        elements.push((Permutation::from_mapping(map)?, chi));
    }
    let mut generators = Vec::new();
    for w in particles.windows(2) {
        let perm = Permutation::transposition(n, w[0], w[1])?;
        let chi = match kind {
            StatKind::Fermi => -1,
            StatKind::Bose => 1,
        };
        generators.push((perm, chi));
    }
    Ok(RawGroup {
        elements,
        generators,
    })
}

fn product_group(n: usize, children: Vec<RawGroup>) -> Result<RawGroup> {
    let mut elements = vec![(Permutation::identity(n), 1i8)];
    let mut generators = Vec::new();
    for child in children {
        let mut next = Vec::with_capacity(elements.len() * child.elements.len());
        for (g, chi_g) in &elements {
            for (h, chi_h) in &child.elements {
                next.push((g.compose(h)?, chi_g * chi_h));
            }
        }
        elements = next;
        generators.extend(child.generators);
    }
    Ok(RawGroup {
        elements,
        generators,
    })
}

/// Permutation moving block `i` onto block `tau(i)` positionally.
fn block_map(n: usize, blocks: &[Vec<usize>], tau: &Permutation) -> Result<Permutation> {
    let mut map: Vec<usize> = (0..n).collect();
    for (i, block) in blocks.iter().enumerate() {
        let target = &blocks[tau.apply(i)];
        for (pos, &p) in block.iter().enumerate() {
            map[p] = target[pos];
        }
    }
    Permutation::from_mapping(map)
}

fn exchange_group(
    n: usize,
    kind: StatKind,
    blocks: &[Vec<usize>],
    children: Vec<RawGroup>,
) -> Result<RawGroup> {
    let k = children.len();
    let internal = product_group(n, children)?;
    let mut elements = Vec::new();
    for tau in permutations(k)? {
        let beta = block_map(n, blocks, &tau)?;
        let chi_tau = match kind {
            StatKind::Fermi => tau.parity(),
            StatKind::Bose => 1,
        };
        for (g, chi_g) in &internal.elements {
            elements.push((beta.compose(g)?, chi_tau * chi_g));
        }
    }
    let mut generators = internal.generators;
    for i in 0..k.saturating_sub(1) {
        let tau = Permutation::transposition(k, i, i + 1)?;
        let beta = block_map(n, blocks, &tau)?;
        let chi = match kind {
            StatKind::Fermi => -1,
            StatKind::Bose => 1,
        };
        generators.push((beta, chi));
    }
    Ok(RawGroup {
        elements,
        generators,
    })
}

fn build(n: usize, tree: &StatisticsTree) -> Result<RawGroup> {
    match tree {
        StatisticsTree::Leaf { kind, particles } => leaf_group(n, *kind, particles),
        StatisticsTree::Product(children) => {
            if children.is_empty() {
                return Err(Error::MalformedTree("empty product".into()));
            }
            let built = children
                .iter()
                .map(|c| build(n, c))
                .collect::<Result<Vec<_>>>()?;
            product_group(n, built)
        }
        StatisticsTree::Exchange { kind, children } => {
            if children.is_empty() {
                return Err(Error::MalformedTree("empty exchange".into()));
            }
            for c in &children[1..] {
                if !children[0].shape_eq(c) {
                    return Err(Error::MalformedTree(
                        "exchanged blocks must be structurally identical".into(),
                    ));
                }
            }
            let blocks: Vec<Vec<usize>> = children.iter().map(|c| c.particles()).collect();
            let built = children
                .iter()
                .map(|c| build(n, c))
                .collect::<Result<Vec<_>>>()?;
            exchange_group(n, *kind, &blocks, built)
        }
    }
}

/// Enumerates the permutations allowed by a statistics assignment along
/// with their sign characters, verifying on the way out that the element
/// set is duplicate-free, generated by its block moves, and carries a
/// multiplicative character.
pub fn compose_statistics(tree: &StatisticsTree) -> Result<GroupDescription> {
    let mut particles = tree.particles();
    let n = particles.len();
    if n == 0 {
        return Err(Error::MalformedTree("tree covers no particles".into()));
    }
    if n > MAX_COMPOSE_PARTICLES {
        return Err(Error::TooManyParticles {
            limit: MAX_COMPOSE_PARTICLES,
            found: n,
        });
    }
    particles.sort_unstable();
    particles.dedup();
    if particles.len() != n || particles[0] != 0 || particles[n - 1] != n - 1 {
        return Err(Error::MalformedTree(
            "leaf blocks must partition 0..n".into(),
        ));
    }

    let raw = build(n, tree)?;
    let group = GroupDescription {
        n,
        elements: raw.elements,
    };
    verify(&group, &raw.generators)?;
    Ok(group)
}

/// Generator-based group verification: the element set contains the
/// identity, is closed under every generator, is reached from the identity
/// by the generators, and the character is multiplicative against them.
/// Closure under generators plus reachability imply closure under the full
/// multiplication table.
fn verify(group: &GroupDescription, generators: &[(Permutation, i8)]) -> Result<()> {
    let bad = |msg: &str| Error::MalformedTree(msg.into());
    let chars: BTreeMap<Vec<usize>, i8> = group
        .elements
        .iter()
        .map(|(p, chi)| (p.mapping().to_vec(), *chi))
        .collect();
    if chars.len() != group.elements.len() {
        return Err(bad("duplicate group elements"));
    }
    let identity = Permutation::identity(group.n);
    match chars.get(identity.mapping()) {
        Some(1) => {}
        _ => return Err(bad("missing identity element")),
    }

    for (s, chi_s) in generators {
        for (h, chi_h) in &group.elements {
            let sh = s.compose(h)?;
            match chars.get(sh.mapping()) {
                Some(&chi) if chi == chi_s * chi_h => {}
                _ => return Err(bad("generator product leaves the element set")),
            }
        }
    }

    // Breadth-first generation from the identity must reach everything.
    let mut reached: BTreeSet<Vec<usize>> = BTreeSet::new();
    reached.insert(identity.mapping().to_vec());
    let mut frontier = vec![identity];
    while let Some(g) = frontier.pop() {
        for (s, _) in generators {
            let sg = s.compose(&g)?;
            if reached.insert(sg.mapping().to_vec()) {
                frontier.push(sg);
            }
        }
    }
    if reached.len() != group.elements.len() {
        return Err(bad("generators do not span the element set"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helium_lithium_product() {
        // a2 ⊗ a3 over five particles
        let tree = StatisticsTree::Product(vec![
            StatisticsTree::a(vec![0, 1]),
            StatisticsTree::a(vec![2, 3, 4]),
        ]);
        let group = compose_statistics(&tree).unwrap();
        assert_eq!(group.order(), 12);
        assert!(group.closure_table_ok());
        // character is the product of the block parities
        for (perm, chi) in group.elements() {
            let block1 = Permutation::from_mapping(vec![perm.apply(0), perm.apply(1)]).unwrap();
            let block2 = Permutation::from_mapping(vec![
                perm.apply(2) - 2,
                perm.apply(3) - 2,
                perm.apply(4) - 2,
            ])
            .unwrap();
            assert_eq!(*chi, block1.parity() * block2.parity());
        }
    }

    #[test]
    fn three_helium_atoms_exchange() {
        // s3 ∘ (a2 ⊗ a2 ⊗ a2) over six particles
        let tree = StatisticsTree::Exchange {
            kind: StatKind::Bose,
            children: vec![
                StatisticsTree::a(vec![0, 1]),
                StatisticsTree::a(vec![2, 3]),
                StatisticsTree::a(vec![4, 5]),
            ],
        };
        let group = compose_statistics(&tree).unwrap();
        assert_eq!(group.order(), 48);
        assert!(group.closure_table_ok());
    }

    #[test]
    fn hydrogen_electrons_are_fully_symmetric() {
        for n in [2usize, 3, 5] {
            let tree = StatisticsTree::s((0..n).collect());
            let group = compose_statistics(&tree).unwrap();
            assert_eq!(group.order(), factorial(n));
            assert!(group.elements().iter().all(|&(_, chi)| chi == 1));
            assert!(group.closure_table_ok());
        }
    }

    #[test]
    fn antisymmetric_leaf_uses_parities() {
        let tree = StatisticsTree::a(vec![0, 1, 2]);
        let group = compose_statistics(&tree).unwrap();
        assert_eq!(group.order(), 6);
        for (perm, chi) in group.elements() {
            assert_eq!(*chi, perm.parity());
        }
    }

    #[test]
    fn signed_exchange_carries_block_parity() {
        // a2 ∘ (s1 ⊗ s1): swapping two single-particle blocks picks up -1
        let tree = StatisticsTree::Exchange {
            kind: StatKind::Fermi,
            children: vec![StatisticsTree::s(vec![0]), StatisticsTree::s(vec![1])],
        };
        let group = compose_statistics(&tree).unwrap();
        assert_eq!(group.order(), 2);
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(group.character(&swap), Some(-1));
        assert!(group.closure_table_ok());
    }

    #[test]
    fn malformed_trees_are_rejected() {
        // overlapping blocks
        let overlap = StatisticsTree::Product(vec![
            StatisticsTree::a(vec![0, 1]),
            StatisticsTree::a(vec![1, 2]),
        ]);
        assert!(compose_statistics(&overlap).is_err());
        // gap in the particle indices
        let gap = StatisticsTree::a(vec![0, 2]);
        assert!(compose_statistics(&gap).is_err());
        // structurally different exchange blocks
        let uneven = StatisticsTree::Exchange {
            kind: StatKind::Bose,
            children: vec![StatisticsTree::a(vec![0, 1]), StatisticsTree::s(vec![2, 3])],
        };
        assert!(compose_statistics(&uneven).is_err());
        // too many particles
        let big = StatisticsTree::s((0..9).collect());
        assert!(matches!(
            compose_statistics(&big),
            Err(Error::TooManyParticles { .. })
        ));
    }
}
