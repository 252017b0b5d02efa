//! Projective covers, syzygies, and projective-summand stripping.

use super::{free_module, hom_space, Module, ModuleMap};
use crate::field::Coeff;
use crate::matrix::Mat;
use std::sync::Arc;

/// A minimal projective cover P -> M: the cover module, the covering
/// map, and the idempotent block of each indecomposable summand of P.
#[derive(Clone)]
pub struct CoverData {
    pub p: Module,
    pub map: ModuleMap,
    pub summands: Vec<usize>,
    /// per summand: the (block, position) slot of each basis element of
    /// the corresponding indecomposable projective inside `p`
    pub slots: Vec<Vec<(usize, usize, usize)>>,
    /// per summand: (block, position) of its generator inside `p`
    pub gen_pos: Vec<(usize, usize)>,
}

/// Radical of M per block: a basis (as columns) of rad M = sum of the
/// generator images.
pub fn radical_basis(m: &Module) -> Vec<Mat> {
    let a = m.algebra();
    let f = m.field();
    let mut per_block: Vec<Vec<Vec<Coeff>>> = vec![Vec::new(); a.n_blocks()];
    for (k, &g) in a.generators.iter().enumerate() {
        let t = a.target[g];
        let act = m.gen_action(k);
        for j in 0..act.cols {
            per_block[t].push(act.col(j));
        }
    }
    per_block
        .into_iter()
        .enumerate()
        .map(|(blk, cols)| {
            let d = m.dims()[blk];
            if cols.is_empty() {
                Mat::zero(d, 0, f)
            } else {
                Mat::from_cols(cols, d, f).image_basis()
            }
        })
        .collect()
}

/// Minimal projective cover, memoized on the module. Returns `None`
/// for the zero module.
pub fn projective_cover(m: &Module) -> Option<CoverData> {
    m.0.cover
        .get_or_init(|| {
            if m.is_zero() {
                return None;
            }
            Some(compute_cover(m))
        })
        .clone()
}

fn compute_cover(m: &Module) -> CoverData {
    let a = m.algebra();
    let f = m.field();
    let rad = radical_basis(m);
    // top representatives per block: coordinate vectors completing rad to M
    let mut summands: Vec<usize> = Vec::new();
    let mut reps: Vec<Vec<Coeff>> = Vec::new();
    for blk in 0..a.n_blocks() {
        let d = m.dims()[blk];
        if d == 0 {
            continue;
        }
        // pivots of [rad | I]: identity columns chosen complete the span
        let aug = rad[blk].hstack(&Mat::identity(d, f));
        let mut work = aug.clone();
        let pivots = work.rref();
        for &c in &pivots {
            if c >= rad[blk].cols {
                summands.push(blk);
                let mut v = vec![f.zero(); d];
                v[c - rad[blk].cols] = f.one();
                reps.push(v);
            }
        }
    }
    let (p, layout) = free_module(a, &summands);
    // cover map: summand k generated at rep vector reps[k]; basis element
    // b of P_{e_k} maps to ρ_M(b)·reps[k]
    let mut blocks: Vec<Mat> =
        m.dims().iter().zip(p.dims()).map(|(&dm, &dp)| Mat::zero(dm, dp, f)).collect();
    for (k, slots) in layout.slots.iter().enumerate() {
        for &(b, blk, pos) in slots {
            let act = m.act_basis(b);
            let col = act.apply(&reps[k]);
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    blocks[blk].set(i, pos, v);
                }
            }
        }
    }
    let map = ModuleMap::new(p.clone(), m.clone(), blocks);
    debug_assert!(map.is_surjective(), "cover map must be onto");
    CoverData { p, map, summands, slots: layout.slots, gen_pos: layout.gen_pos }
}

/// i-th syzygy via iterated minimal covers; the zero module when the
/// previous syzygy is projective.
pub fn syzygy(m: &Module, i: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..i {
        let Some(cover) = projective_cover(&cur) else {
            return Module::zero(m.algebra());
        };
        let (k, _) = cover.map.kernel();
        cur = k;
    }
    cur
}

#[derive(Clone, Debug)]
pub struct StripResult {
    pub core: Module,
    /// idempotent blocks of the peeled indecomposable projectives, in
    /// peel order
    pub peeled: Vec<usize>,
}

/// Splits off indecomposable projective summands until none remains.
///
/// P_e is a summand of M iff the composition pairing
/// Hom(P_e, M) x Hom(M, P_e) -> End(P_e)/rad is nonzero on some basis
/// pair; when it is, the witnessing pair is converted into a split
/// surjection and the complement is carried forward.
pub fn strip_projective_summands(m: &Module) -> StripResult {
    let a = Arc::clone(m.algebra());
    let mut core = m.clone();
    let mut peeled = Vec::new();
    'outer: loop {
        if core.is_zero() {
            break;
        }
        for e in 0..a.n_blocks() {
            if let Some(next) = try_peel(&core, e) {
                peeled.push(e);
                core = next;
                continue 'outer;
            }
        }
        break;
    }
    StripResult { core, peeled }
}

/// Attempts to split one copy of P_e off `m`; returns the complement.
fn try_peel(m: &Module, e: usize) -> Option<Module> {
    let a = m.algebra();
    if m.dims()[e] == 0 {
        return None;
    }
    let pe = Module::indec_projective(a, e);
    // position of the idempotent generator inside P_e's e-block
    let (_, layout) = free_module(a, &[e]);
    let (gblk, gpos) = layout.gen_pos[0];
    debug_assert_eq!(gblk, e);
    let maps_in = hom_space(&pe, m);
    if maps_in.is_empty() {
        return None;
    }
    let maps_out = hom_space(m, &pe);
    for g in &maps_out {
        for f in &maps_in {
            let h = g.compose(f);
            // top coefficient of h at the generator slot
            let c = h.blocks[e].at(gpos, gpos).clone();
            if c.is_zero() {
                continue;
            }
            // u = g∘f invertible in End(P_e); normalize to a retraction
            let u = ModuleMap::new(pe.clone(), pe.clone(), h.blocks.clone());
            let u_inv = u.inverse().expect("unit of the local endomorphism ring");
            let retraction = u_inv.compose(g);
            debug_assert!(retraction.compose(f).is_invertible());
            let (complement, _) = retraction.kernel();
            return Some(complement);
        }
    }
    None
}

/// A module is projective iff stripping leaves nothing.
pub fn is_projective(m: &Module) -> bool {
    strip_projective_summands(m).core.is_zero()
}
