use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::crowns::enumerate_crowns;
use super::maps::{enumerate_enriched_maps, enumerate_rooted_trees, EnrichedMap};
use super::partitions::set_partitions;
use crate::error::Result;
use crate::rational::Rational;
use crate::series::{advance_odometer, Color, KernelFamily};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Maps,
    Trees,
    Crowns,
}

type Cache = Mutex<HashMap<(Kind, usize, usize), Arc<Vec<EnrichedMap>>>>;

fn cached(kind: Kind, vertices: usize, sinks: usize) -> Arc<Vec<EnrichedMap>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(list) = cache.lock().unwrap().get(&(kind, vertices, sinks)) {
        return list.clone();
    }
    let list = Arc::new(match kind {
        Kind::Maps => enumerate_enriched_maps(vertices, sinks),
        Kind::Trees => enumerate_rooted_trees(vertices),
        Kind::Crowns => enumerate_crowns(vertices),
    });
    cache.lock().unwrap().entry((kind, vertices, sinks)).or_insert(list).clone()
}

fn weight_sum(maps: &[EnrichedMap], coloring: &[Color], a: &KernelFamily) -> Result<Rational> {
    let mut acc = Rational::zero();
    for m in maps {
        acc += m.weight(coloring, a)?;
    }
    Ok(acc)
}

/// `t_n(root; leaves)`: total weight of the vertex-rooted trees on
/// `n = leaves.len()` vertices with the sink colored `root`. `t_0 = 1`.
pub fn tree_coefficient(root: Color, leaves: &[Color], a: &KernelFamily) -> Result<Rational> {
    if leaves.is_empty() {
        return Ok(Rational::one());
    }
    let mut coloring = leaves.to_vec();
    coloring.push(root);
    weight_sum(&cached(Kind::Trees, leaves.len(), 1), &coloring, a)
}

/// `E^n_{#I}(q; q_I)` as the total weight of enriched maps from `I` into
/// `[n]`, where positions outside `I` act as sinks. `I = ∅` gives 1.
pub fn exp_coefficient_via_maps(q: &[Color], subset: &[usize], a: &KernelFamily) -> Result<Rational> {
    if subset.is_empty() {
        return Ok(Rational::one());
    }
    let rest: Vec<usize> = (0..q.len()).filter(|i| !subset.contains(i)).collect();
    let coloring: Vec<Color> = subset.iter().chain(&rest).map(|&i| q[i]).collect();
    weight_sum(&cached(Kind::Maps, subset.len(), rest.len()), &coloring, a)
}

/// Total weight of the crowns on the positions `support` of `q`.
pub fn crown_weight(q: &[Color], support: &[usize], a: &KernelFamily) -> Result<Rational> {
    let coloring: Vec<Color> = support.iter().map(|&i| q[i]).collect();
    weight_sum(&cached(Kind::Crowns, support.len(), 0), &coloring, a)
}

/// `sum_s sign(s) sum_{{V_1..V_s}} prod_i crown_weight(V_i)` over set
/// partitions of the positions of `q`.
pub fn crown_assembly_sum(
    q: &[Color],
    a: &KernelFamily,
    sign: impl Fn(usize) -> Rational,
) -> Result<Rational> {
    let mut by_support: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut acc = Rational::zero();
    for partition in set_partitions(q.len()) {
        let mut term = sign(partition.len());
        for block in &partition {
            if !by_support.contains_key(block) {
                let w = crown_weight(q, block, a)?;
                by_support.insert(block.clone(), w);
            }
            term *= &by_support[block];
            if term.is_zero() {
                break;
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// `D_k(q)` via signed crown assemblies, sign `(-1)^s` for `s` crowns.
pub fn det_coefficient_via_crowns(q: &[Color], a: &KernelFamily) -> Result<Rational> {
    crown_assembly_sum(q, a, |s| if s % 2 == 0 { Rational::one() } else { -Rational::one() })
}

/// `F^n_{#L}(q; q_L)`: sum over ordered partitions `(V_l)` of `[n] \ L`
/// (empty parts allowed) of `prod_l t_{#V_l}(q_l; q_{V_l})`.
pub fn forest_coefficient(q: &[Color], roots: &[usize], a: &KernelFamily) -> Result<Rational> {
    let rest: Vec<usize> = (0..q.len()).filter(|i| !roots.contains(i)).collect();
    if roots.is_empty() {
        return Ok(if rest.is_empty() { Rational::one() } else { Rational::zero() });
    }
    let mut memo: HashMap<(usize, Vec<usize>), Rational> = HashMap::new();
    let mut assign = vec![0usize; rest.len()];
    let mut acc = Rational::zero();
    loop {
        let mut term = Rational::one();
        for (slot, &root) in roots.iter().enumerate() {
            let part: Vec<usize> = rest.iter().zip(&assign).filter(|(_, &s)| s == slot).map(|(&i, _)| i).collect();
            let t = match memo.get(&(root, part.clone())) {
                Some(t) => t.clone(),
                None => {
                    let leaves: Vec<Color> = part.iter().map(|&i| q[i]).collect();
                    let t = tree_coefficient(q[root], &leaves, a)?;
                    memo.insert((root, part), t.clone());
                    t
                }
            };
            term *= t;
            if term.is_zero() {
                break;
            }
        }
        acc += term;
        if !advance_odometer(&mut assign, roots.len()) {
            break;
        }
    }
    Ok(acc)
}
