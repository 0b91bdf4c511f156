use serde::Serialize;

use super::ConstructError;
use crate::multigraph::{Dart, MultiGraph};
use crate::ribbon::{equivalent, CompanionFunction, EmbeddingScheme, StripDecomposition};

/// Strips found on one graph.
#[derive(Clone, Debug)]
pub struct Census {
    /// One representative per switching class, with every spanning-tree edge
    /// untwisted.
    pub schemes: Vec<EmbeddingScheme>,
    /// Companion-function equivalence classes, as indices into `schemes`.
    pub classes: Vec<CensusClass>,
    /// The size guard value `Π (deg v − 1)! · 2^m`.
    pub bound: u128,
    /// Number of (rotation, signature) candidates actually traced.
    pub examined: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClass {
    pub companion: CompanionFunction,
    pub members: Vec<usize>,
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

pub(crate) fn census_bound(g: &MultiGraph) -> u128 {
    let rotations = (0..g.vertex_count())
        .map(|v| factorial(g.degree(v).saturating_sub(1)))
        .fold(1u128, |a, b| a.saturating_mul(b));
    let m = g.edge_count() as u32;
    let signs = if m >= 127 { u128::MAX } else { 1u128 << m };
    rotations.saturating_mul(signs)
}

/// Cyclic orders of `darts` with the first dart kept in front.
pub fn cyclic_orders(darts: &[Dart]) -> Vec<Vec<Dart>> {
    fn permute(fixed: &mut Vec<Dart>, rest: &mut Vec<Dart>, out: &mut Vec<Vec<Dart>>) {
        if rest.is_empty() {
            out.push(fixed.clone());
            return;
        }
        for i in 0..rest.len() {
            let d = rest.remove(i);
            fixed.push(d);
            permute(fixed, rest, out);
            fixed.pop();
            rest.insert(i, d);
        }
    }
    if darts.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    permute(&mut vec![darts[0]], &mut darts[1..].to_vec(), &mut out);
    out
}

/// Every rotation system of `g`, each cyclic order starting at its smallest
/// dart.
pub fn rotation_systems(g: &MultiGraph) -> impl Iterator<Item = Vec<Vec<Dart>>> {
    let choices: Vec<Vec<Vec<Dart>>> = (0..g.vertex_count())
        .map(|v| cyclic_orders(g.darts_at(v)))
        .collect();
    let mut counter = vec![0usize; choices.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item = choices
            .iter()
            .zip(&counter)
            .map(|(c, &i)| c[i].clone())
            .collect();
        done = true;
        for (k, c) in counter.iter_mut().enumerate() {
            *c += 1;
            if *c < choices[k].len() {
                done = false;
                break;
            }
            *c = 0;
        }
        Some(item)
    })
}

fn reversed(rot: &[Vec<Dart>]) -> Vec<Vec<Dart>> {
    rot.iter()
        .map(|r| {
            let mut out = r.clone();
            if out.len() > 1 {
                out[1..].reverse();
            }
            out
        })
        .collect()
}

/// All one-face schemes on `g` up to vertex switching, grouped by companion
/// function.
///
/// Switching every vertex at once reverses all rotations and leaves the
/// signature alone, while switching any other vertex set twists some tree
/// edge. So with tree edges untwisted, a switching class is the pair of a
/// rotation system and its global reverse; the smaller one is kept.
pub fn enumerate_cl_structures(g: &MultiGraph, limit: u128) -> Result<Census, ConstructError> {
    let bound = census_bound(g);
    if bound > limit {
        return Err(ConstructError::TooLarge { bound, limit });
    }
    let tree = g.spanning_tree();
    let q = tree.non_tree_edges.len();
    let mut schemes = Vec::new();
    let mut examined = 0u128;
    for rotation in rotation_systems(g) {
        if reversed(&rotation) < rotation {
            continue;
        }
        for mask in 0u64..(1u64 << q) {
            let mut signature = vec![false; g.edge_count()];
            for (bit, &e) in tree.non_tree_edges.iter().enumerate() {
                signature[e] = mask >> bit & 1 == 1;
            }
            examined += 1;
            let s = EmbeddingScheme::new(g.clone(), rotation.clone(), signature)?;
            if s.is_cl_structure() {
                schemes.push(s);
            }
        }
    }

    let mut classes: Vec<CensusClass> = Vec::new();
    for (i, s) in schemes.iter().enumerate() {
        let f = StripDecomposition::normalized(s.clone()).companion_function();
        let mut placed = false;
        for c in &mut classes {
            if equivalent(&c.companion, &f, g)? {
                c.members.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(CensusClass {
                companion: f,
                members: vec![i],
            });
        }
    }
    Ok(Census {
        schemes,
        classes,
        bound,
        examined,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::multigraph::catalog;

    type Key = (Vec<Vec<usize>>, Vec<bool>);

    fn key_of(rot: &[Vec<Dart>], sig: &[bool]) -> Key {
        let rot = rot
            .iter()
            .map(|r| {
                let mut r: Vec<usize> = r.iter().map(|d| d.0).collect();
                if let Some(p) = r.iter().enumerate().min_by_key(|(_, &d)| d).map(|(i, _)| i) {
                    r.rotate_left(p);
                }
                r
            })
            .collect();
        (rot, sig.to_vec())
    }

    /// Smallest key over all 2^n switchings, computed from scratch.
    fn switching_class(s: &EmbeddingScheme) -> Key {
        let g = s.graph();
        let n = g.vertex_count();
        (0u32..1 << n)
            .map(|mask| {
                let mut t = s.clone();
                for v in 0..n {
                    if mask >> v & 1 == 1 {
                        t = t.switch_vertex(v);
                    }
                }
                key_of(t.rotations(), t.signatures())
            })
            .min()
            .unwrap()
    }

    /// Unrestricted search: every rotation times every signature.
    fn brute_force_classes(g: &MultiGraph) -> BTreeSet<Key> {
        let mut out = BTreeSet::new();
        for rot in rotation_systems(g) {
            for mask in 0u32..1 << g.edge_count() {
                let sig = (0..g.edge_count()).map(|e| mask >> e & 1 == 1).collect();
                let s = EmbeddingScheme::new(g.clone(), rot.clone(), sig).unwrap();
                if s.is_cl_structure() {
                    out.insert(switching_class(&s));
                }
            }
        }
        out
    }

    #[test]
    fn cyclic_orders_count() {
        let darts: Vec<Dart> = (0..5).map(Dart).collect();
        assert_eq!(cyclic_orders(&darts).len(), 24);
        assert_eq!(cyclic_orders(&[]).len(), 1);
        assert_eq!(rotation_systems(&catalog::theta(3)).count(), 4);
    }

    #[test]
    fn point_has_one_structure() {
        let c = enumerate_cl_structures(&MultiGraph::point(), 10).unwrap();
        assert_eq!(c.schemes.len(), 1);
        assert_eq!(c.classes.len(), 1);
    }

    #[test]
    fn cycles_have_a_unique_class() {
        for n in 1..=5 {
            let c = enumerate_cl_structures(&catalog::cycle(n), 1 << 20).unwrap();
            assert_eq!(c.schemes.len(), 1);
            assert_eq!(c.classes.len(), 1);
        }
    }

    #[test]
    fn rose_census_matches_brute_force() {
        let g = catalog::rose(2);
        let oracle = brute_force_classes(&g);
        let c = enumerate_cl_structures(&g, 1000).unwrap();
        assert_eq!(c.bound, 24);
        assert_eq!(c.schemes.len(), oracle.len());
        // frozen from the brute-force search above
        assert_eq!(c.schemes.len(), 5);
        assert_eq!(c.classes.len(), 1);
    }

    #[test]
    fn refuses_large_graphs() {
        let err = enumerate_cl_structures(&catalog::petersen(), 1_000_000).unwrap_err();
        assert_eq!(
            err,
            ConstructError::TooLarge {
                bound: 1u128 << 25,
                limit: 1_000_000
            }
        );
    }

    #[test]
    fn census_is_exactly_the_brute_force_set() {
        for g in catalog::connected_multigraphs(3) {
            let oracle = brute_force_classes(&g);
            let c = enumerate_cl_structures(&g, u128::MAX).unwrap();
            let found: Vec<Key> = c.schemes.iter().map(switching_class).collect();
            let unique: BTreeSet<Key> = found.iter().cloned().collect();
            assert_eq!(unique.len(), found.len());
            assert_eq!(unique, oracle, "{:?}", g.all_ends());
            let members: usize = c.classes.iter().map(|k| k.members.len()).sum();
            assert_eq!(members, c.schemes.len());
        }
    }
}
