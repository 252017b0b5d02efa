//! Bimodules as modules over an enveloping tensor algebra, and the
//! balanced tensor product of a bimodule with a left module.

use super::{quotient_by_columns, ModError, Module};
use crate::algebra::{enveloping, Algebra, TensorLayout};
use crate::matrix::Mat;
use std::sync::Arc;

/// An (L, R)-bimodule: a left module over L ⊗ R^op with marked sides.
#[derive(Clone)]
pub struct Bimodule {
    pub left: Arc<Algebra>,
    pub right: Arc<Algebra>,
    /// tensor(left, opposite(right))
    pub env: Arc<Algebra>,
    pub module: Module,
}

impl std::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bimodule(dim {})", self.module.total_dim())
    }
}

impl Bimodule {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, env: Arc<Algebra>, module: Module) -> Bimodule {
        assert!(Algebra::same(module.algebra(), &env));
        Bimodule { left, right, env, module }
    }

    pub fn layout(&self) -> TensorLayout {
        TensorLayout::of(&self.env).expect("enveloping algebra is a tensor algebra")
    }

    pub fn total_dim(&self) -> usize {
        self.module.total_dim()
    }

    /// dim of the (i, j) grid block.
    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.module.dims()[self.layout().block(i, j)]
    }

    /// Action of the ka-th left-algebra generator on the column of grid
    /// blocks with right index j: maps (s_a, j) -> (t_a, j).
    pub fn left_gen_action(&self, ka: usize, j: usize) -> &Mat {
        let l = self.layout();
        self.module.gen_action(l.left_gen(ka, j))
    }

    /// Right action of the kb-th right-algebra generator on the row of
    /// grid blocks with left index i: maps (i, t_b) -> (i, s_b).
    pub fn right_gen_action(&self, kb: usize, i: usize) -> &Mat {
        let l = self.layout();
        self.module.gen_action(l.right_gen(i, kb))
    }

    /// Restriction to a left module over `left` (grid rows concatenated
    /// in right-block order).
    pub fn restrict_left(&self) -> Module {
        let l = self.layout();
        let la = &self.left;
        let f = la.field;
        let nbr = l.right_blocks;
        let dims_env = self.module.dims();
        let mut dims = vec![0usize; la.n_blocks()];
        let mut offset = vec![vec![0usize; nbr]; la.n_blocks()];
        for i in 0..la.n_blocks() {
            for j in 0..nbr {
                offset[i][j] = dims[i];
                dims[i] += dims_env[l.block(i, j)];
            }
        }
        let mut gen_actions = Vec::with_capacity(la.generators.len());
        for (ka, &g) in la.generators.iter().enumerate() {
            let (s, t) = (la.source[g], la.target[g]);
            let mut m = Mat::zero(dims[t], dims[s], f);
            for j in 0..nbr {
                let a = self.left_gen_action(ka, j);
                for r in 0..a.rows {
                    for c in 0..a.cols {
                        if !a.at(r, c).is_zero() {
                            m.set(offset[t][j] + r, offset[s][j] + c, a.at(r, c).clone());
                        }
                    }
                }
            }
            gen_actions.push(m);
        }
        Module::new(Arc::clone(la), dims, gen_actions)
    }

    /// Restriction to a left module over `right_op` (which must be the
    /// opposite of the right algebra; grid columns concatenated in
    /// left-block order).
    pub fn restrict_right(&self, right_op: &Arc<Algebra>) -> Module {
        let l = self.layout();
        let f = right_op.field;
        let nbl = l.left_blocks;
        let dims_env = self.module.dims();
        let mut dims = vec![0usize; right_op.n_blocks()];
        let mut offset = vec![vec![0usize; nbl]; right_op.n_blocks()];
        for j in 0..right_op.n_blocks() {
            for i in 0..nbl {
                offset[j][i] = dims[j];
                dims[j] += dims_env[l.block(i, j)];
            }
        }
        let mut gen_actions = Vec::with_capacity(right_op.generators.len());
        for (kb, &g) in right_op.generators.iter().enumerate() {
            // op arrow kb: t_b -> s_b in op-blocks
            let (s_op, t_op) = (right_op.source[g], right_op.target[g]);
            let mut m = Mat::zero(dims[t_op], dims[s_op], f);
            for i in 0..nbl {
                let a = self.right_gen_action(kb, i);
                for r in 0..a.rows {
                    for c in 0..a.cols {
                        if !a.at(r, c).is_zero() {
                            m.set(offset[t_op][i] + r, offset[s_op][i] + c, a.at(r, c).clone());
                        }
                    }
                }
            }
            gen_actions.push(m);
        }
        Module::new(Arc::clone(right_op), dims, gen_actions)
    }
}

/// The algebra as a bimodule over itself.
pub fn regular_bimodule(a: &Arc<Algebra>) -> Bimodule {
    let env = enveloping(a).expect("same field");
    let l = TensorLayout::of(&env).unwrap();
    let f = a.field;
    // basis element x lives in grid block (target(x), source(x))
    let mut dims = vec![0usize; env.n_blocks()];
    let mut place: Vec<(usize, usize)> = Vec::with_capacity(a.dim);
    for b in 0..a.dim {
        let blk = l.block(a.target[b], a.source[b]);
        place.push((blk, dims[blk]));
        dims[blk] += 1;
    }
    let mut gen_actions: Vec<Mat> = env
        .generators
        .iter()
        .map(|&g| Mat::zero(dims[env.target[g]], dims[env.source[g]], f))
        .collect();
    for b in 0..a.dim {
        let (iblk, jblk) = (a.target[b], a.source[b]);
        let (_, pos) = place[b];
        // left action by each left generator
        for (ka, &ga) in a.generators.iter().enumerate() {
            if a.source[ga] != iblk {
                continue;
            }
            let gen = l.left_gen(ka, jblk);
            for (d, c) in a.mult(ga, b) {
                let (dblk, dpos) = place[*d as usize];
                debug_assert_eq!(dblk, l.block(a.target[ga], jblk));
                let _ = dblk;
                let old = gen_actions[gen].at(dpos, pos).clone();
                gen_actions[gen].set(dpos, pos, f.add(&old, c));
            }
        }
        // right action by each right generator
        for (kb, &gb) in a.generators.iter().enumerate() {
            if a.target[gb] != jblk {
                continue;
            }
            let gen = l.right_gen(iblk, kb);
            for (d, c) in a.mult(b, gb) {
                let (dblk, dpos) = place[*d as usize];
                debug_assert_eq!(dblk, l.block(iblk, a.source[gb]));
                let _ = dblk;
                let old = gen_actions[gen].at(dpos, pos).clone();
                gen_actions[gen].set(dpos, pos, f.add(&old, c));
            }
        }
    }
    let module = Module::new(Arc::clone(&env), dims, gen_actions);
    Bimodule { left: Arc::clone(a), right: Arc::clone(a), env, module }
}

/// Balanced tensor product X ⊗_A V of an (B, A)-bimodule with a left
/// A-module, computed blockwise as the coequalizer of the two middle
/// actions: ambient ⊕_j X_{(i,j)} ⊗ V_j modulo x·a ⊗ v − x ⊗ a·v.
pub fn tensor_bimodule_module(x: &Bimodule, v: &Module) -> Result<Module, ModError> {
    if !Algebra::same(&x.right, v.algebra()) {
        return Err(ModError::AlgebraMismatch);
    }
    let la = &x.left;
    let ra = &x.right;
    let f = la.field;
    let nbl = la.n_blocks();
    let nbr = ra.n_blocks();

    // ambient coordinates per left block i: (j, xpos, vpos)
    let mut amb_dims = vec![0usize; nbl];
    let mut offset = vec![vec![0usize; nbr]; nbl];
    for i in 0..nbl {
        for j in 0..nbr {
            offset[i][j] = amb_dims[i];
            amb_dims[i] += x.block_dim(i, j) * v.dims()[j];
        }
    }
    let coord = |i: usize, j: usize, xp: usize, vp: usize| offset[i][j] + xp * v.dims()[j] + vp;

    // balancing relations per left block
    let mut rel_cols: Vec<Vec<Vec<crate::field::Coeff>>> = vec![Vec::new(); nbl];
    for i in 0..nbl {
        for (kb, &gb) in ra.generators.iter().enumerate() {
            let (sb, tb) = (ra.source[gb], ra.target[gb]);
            let xa = x.right_gen_action(kb, i); // (i, tb) -> (i, sb)
            let av = v.gen_action(kb); // V_sb -> V_tb
            for xp in 0..x.block_dim(i, tb) {
                for vp in 0..v.dims()[sb] {
                    let mut rel = vec![f.zero(); amb_dims[i]];
                    for r in 0..xa.rows {
                        let c = xa.at(r, xp);
                        if !c.is_zero() {
                            let sl = coord(i, sb, r, vp);
                            rel[sl] = f.add(&rel[sl], c);
                        }
                    }
                    for s in 0..av.rows {
                        let c = av.at(s, vp);
                        if !c.is_zero() {
                            let sl = coord(i, tb, xp, s);
                            rel[sl] = f.sub(&rel[sl], c);
                        }
                    }
                    if rel.iter().any(|c| !c.is_zero()) {
                        rel_cols[i].push(rel);
                    }
                }
            }
        }
    }
    let spans: Vec<Mat> = rel_cols
        .into_iter()
        .enumerate()
        .map(|(i, cols)| {
            if cols.is_empty() {
                Mat::zero(amb_dims[i], 0, f)
            } else {
                Mat::from_cols(cols, amb_dims[i], f)
            }
        })
        .collect();
    let (q_dims, projs, incls) = quotient_by_columns(&amb_dims, &spans, f);

    // induced left action
    let mut gen_actions = Vec::with_capacity(la.generators.len());
    for (ka, &ga) in la.generators.iter().enumerate() {
        let (sa, ta) = (la.source[ga], la.target[ga]);
        let mut ambient = Mat::zero(amb_dims[ta], amb_dims[sa], f);
        for j in 0..nbr {
            let act = x.left_gen_action(ka, j); // (sa,j) -> (ta,j)
            for c in 0..act.cols {
                for r in 0..act.rows {
                    let cf = act.at(r, c);
                    if cf.is_zero() {
                        continue;
                    }
                    for vp in 0..v.dims()[j] {
                        ambient.set(coord(ta, j, r, vp), coord(sa, j, c, vp), cf.clone());
                    }
                }
            }
        }
        gen_actions.push(projs[ta].mul(&ambient.mul(&incls[sa])));
    }
    Ok(Module::new(Arc::clone(la), q_dims, gen_actions))
}
