//! Hom spaces, isomorphism testing, and indecomposability certificates.
//!
//! The primary Hom computation factors through a minimal projective
//! presentation of the source: Hom(M, N) is the kernel of the map
//! Hom(P0, N) -> Hom(P1, N) given by precomposition with the
//! presentation differential, and Hom(A·e, N) = e·N. A second,
//! independently coded dense intertwiner solve serves as an oracle.

use super::proj::projective_cover;
use super::{Module, ModuleMap};
use crate::algebra::Algebra;
use crate::field::{Coeff, FieldSpec};
use crate::matrix::Mat;
use rand::SeedableRng;
use std::collections::HashMap;

/// Basis of Hom(M, N) as module maps, in a deterministic order.
pub fn hom_space(m: &Module, n: &Module) -> Vec<ModuleMap> {
    assert!(Algebra::same(m.algebra(), n.algebra()), "hom over one algebra");
    let f = m.field();
    if m.is_zero() || n.is_zero() {
        return Vec::new();
    }
    let cover0 = projective_cover(m).expect("nonzero");
    let alpha = &cover0.map;
    let (omega, incl) = alpha.kernel();

    // unknown layout: one vector in N_{e_k} per cover summand
    let offsets: Vec<usize> = {
        let mut off = Vec::with_capacity(cover0.summands.len());
        let mut acc = 0;
        for &e in &cover0.summands {
            off.push(acc);
            acc += n.dims()[e];
        }
        off
    };
    let d0: usize =
        cover0.summands.iter().map(|&e| n.dims()[e]).sum();

    // reverse locator of P0 coordinates: (block, pos) -> (summand, basis elt)
    let mut locate: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (k, slots) in cover0.slots.iter().enumerate() {
        for &(b, blk, pos) in slots {
            locate.insert((blk, pos), (k, b));
        }
    }

    let constraints = if omega.is_zero() {
        Mat::zero(0, d0, f)
    } else {
        let cover1 = projective_cover(&omega).expect("nonzero");
        let d1 = incl.compose(&cover1.map); // P1 -> P0
        let mut rows_total = 0;
        for &e in &cover1.summands {
            rows_total += n.dims()[e];
        }
        let mut c = Mat::zero(rows_total, d0, f);
        let mut row_off = 0;
        for (mi, &fm) in cover1.summands.iter().enumerate() {
            let (gblk, gpos) = cover1.gen_pos[mi];
            debug_assert_eq!(gblk, fm);
            // image of the summand generator in P0 coordinates
            let col = d1.blocks[fm].col(gpos);
            for (p0pos, v) in col.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (k, b) = locate[&(fm, p0pos)];
                let act = n.act_basis(b); // N_{e_k} -> N_{fm}
                for i in 0..act.rows {
                    for j in 0..act.cols {
                        let term = f.mul(v, act.at(i, j));
                        if term.is_zero() {
                            continue;
                        }
                        let old = c.at(row_off + i, offsets[k] + j).clone();
                        c.set(row_off + i, offsets[k] + j, f.add(&old, &term));
                    }
                }
            }
            row_off += n.dims()[fm];
        }
        c
    };

    let kernel = constraints.kernel();
    let mut out = Vec::with_capacity(kernel.cols);
    for s in 0..kernel.cols {
        let sol = kernel.col(s);
        // realize φ: P0 -> N, then divide out the cover
        let mut phi_blocks: Vec<Mat> = n
            .dims()
            .iter()
            .zip(cover0.p.dims())
            .map(|(&dn, &dp)| Mat::zero(dn, dp, f))
            .collect();
        for (k, slots) in cover0.slots.iter().enumerate() {
            let nk = &sol[offsets[k]..offsets[k] + n.dims()[cover0.summands[k]]];
            for &(b, blk, pos) in slots {
                let act = n.act_basis(b);
                let col = act.apply(nk);
                for (i, v) in col.into_iter().enumerate() {
                    if !v.is_zero() {
                        phi_blocks[blk].set(i, pos, v);
                    }
                }
            }
        }
        // f ∘ α = φ, solved blockwise through the surjection α
        let mut f_blocks = Vec::with_capacity(phi_blocks.len());
        for (blk, phi) in phi_blocks.iter().enumerate() {
            let at = alpha.blocks[blk].transpose();
            let ft = at.solve_matrix(&phi.transpose()).expect("kernel condition");
            f_blocks.push(ft.transpose());
        }
        out.push(ModuleMap::new(m.clone(), n.clone(), f_blocks));
    }
    out
}

/// Independent oracle: solves the full intertwining system
/// f ρ_M(g) = ρ_N(g) f directly as one dense kernel computation.
pub fn hom_space_dense(m: &Module, n: &Module) -> Vec<ModuleMap> {
    assert!(Algebra::same(m.algebra(), n.algebra()));
    let a = m.algebra();
    let f = m.field();
    let nb = a.n_blocks();
    let offsets: Vec<usize> = {
        let mut off = Vec::with_capacity(nb);
        let mut acc = 0;
        for blk in 0..nb {
            off.push(acc);
            acc += n.dims()[blk] * m.dims()[blk];
        }
        off
    };
    let total: usize = (0..nb).map(|b| n.dims()[b] * m.dims()[b]).sum();
    let slot = |blk: usize, i: usize, j: usize| offsets[blk] + i * m.dims()[blk] + j;

    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for (k, &g) in a.generators.iter().enumerate() {
        let (s, t) = (a.source[g], a.target[g]);
        let rm = m.gen_action(k);
        let rn = n.gen_action(k);
        for i in 0..n.dims()[t] {
            for j in 0..m.dims()[s] {
                let mut row = vec![f.zero(); total];
                // (f_t ρ_M)_{ij} = Σ_x f_t[i,x] ρ_M[x,j]
                for x in 0..m.dims()[t] {
                    let c = rm.at(x, j);
                    if !c.is_zero() {
                        let sl = slot(t, i, x);
                        row[sl] = f.add(&row[sl], c);
                    }
                }
                // -(ρ_N f_s)_{ij} = -Σ_y ρ_N[i,y] f_s[y,j]
                for y in 0..n.dims()[s] {
                    let c = rn.at(i, y);
                    if !c.is_zero() {
                        let sl = slot(s, y, j);
                        row[sl] = f.sub(&row[sl], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = Mat::from_rows(rows, total, f);
    let kernel = sys.kernel();
    let mut out = Vec::with_capacity(kernel.cols);
    for s in 0..kernel.cols {
        let sol = kernel.col(s);
        let blocks: Vec<Mat> = (0..nb)
            .map(|blk| {
                Mat::from_fn(n.dims()[blk], m.dims()[blk], f, |i, j| sol[slot(blk, i, j)].clone())
            })
            .collect();
        out.push(ModuleMap::new(m.clone(), n.clone(), blocks));
    }
    out
}

/// Searches Hom(M, N) for an invertible element: basis maps first, then
/// 64 seeded random combinations, then evaluations along the moment
/// curve at 2·dim+1 points.
pub fn find_isomorphism(m: &Module, n: &Module) -> Option<ModuleMap> {
    assert!(Algebra::same(m.algebra(), n.algebra()));
    if m.dims() != n.dims() {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let f = m.field();
    let homs = hom_space(m, n);
    if homs.is_empty() {
        return None;
    }
    for h in &homs {
        if h.is_invertible() {
            return Some(h.clone());
        }
    }
    let combine = |coeffs: &[Coeff]| -> ModuleMap {
        let mut acc = ModuleMap::zero(m, n);
        for (h, c) in homs.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&h.scale(c));
            }
        }
        acc
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..64 {
        let coeffs: Vec<Coeff> = homs.iter().map(|_| f.sample(&mut rng)).collect();
        let cand = combine(&coeffs);
        if cand.is_invertible() {
            return Some(cand);
        }
    }
    // moment curve x_k = s^k, s = 1 .. 2·dim+1
    let deg = 2 * m.total_dim() + 1;
    for s in 1..=deg as i64 {
        let mut coeffs = Vec::with_capacity(homs.len());
        let mut pow = f.one();
        let sc = f.from_i64(s);
        for _ in 0..homs.len() {
            coeffs.push(pow.clone());
            pow = f.mul(&pow, &sc);
        }
        let cand = combine(&coeffs);
        if cand.is_invertible() {
            return Some(cand);
        }
    }
    None
}

pub fn is_isomorphic(m: &Module, n: &Module) -> bool {
    find_isomorphism(m, n).is_some()
}

/// Local-endomorphism-ring test: true iff End(M)/rad End(M) is
/// one-dimensional. The radical is the kernel of the trace form of the
/// regular representation of End(M), valid over Q, and over F_p when
/// p > dim End(M).
pub fn is_indecomposable(m: &Module) -> Result<bool, super::ModError> {
    if m.is_zero() {
        return Ok(false);
    }
    let f = m.field();
    let endos = hom_space(m, m);
    let r = endos.len();
    if let FieldSpec::Prime(p) = f {
        if (p as usize) <= r {
            return Err(super::ModError::FieldTooSmall { p, need: r });
        }
    }
    // flatten endomorphisms to coordinate vectors
    let flat = |h: &ModuleMap| -> Vec<Coeff> {
        let mut v = Vec::new();
        for b in &h.blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    v.push(b.at(i, j).clone());
                }
            }
        }
        v
    };
    let dim_flat: usize = m.dims().iter().map(|&d| d * d).sum();
    let basis = Mat::from_cols(endos.iter().map(flat).collect(), dim_flat, f);
    // left regular representation and its traces
    let mut lmats: Vec<Mat> = Vec::with_capacity(r);
    for ei in &endos {
        let mut cols = Vec::with_capacity(r);
        for ej in &endos {
            let prod = flat(&ei.compose(ej));
            let coords = basis.solve(&prod).expect("product stays in End");
            cols.push(coords);
        }
        lmats.push(Mat::from_cols(cols, r, f));
    }
    let traces: Vec<Coeff> = lmats
        .iter()
        .map(|l| {
            let mut t = f.zero();
            for i in 0..r {
                t = f.add(&t, l.at(i, i));
            }
            t
        })
        .collect();
    let gram = Mat::from_fn(r, r, f, |i, j| {
        // trace of left multiplication by e_i∘e_j
        let col = lmats[i].col(j); // coords of e_i∘e_j ... column j of L_i
        let mut t = f.zero();
        for (k, c) in col.iter().enumerate() {
            t = f.add(&t, &f.mul(c, &traces[k]));
        }
        t
    });
    let nullity = r - gram.rank();
    Ok(r - nullity == 1)
}
