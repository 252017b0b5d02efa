//! Finite-dimensional left modules as block representations.
//!
//! A module over one of our bigraded algebras stores one dimension per
//! idempotent block and one matrix per distinguished generator; the
//! action of an arbitrary basis element is the product along its
//! generator word. All maps are block matrices acting on column vectors.

mod hom;
mod proj;
mod string;
mod tensor;

pub use hom::{find_isomorphism, hom_space, hom_space_dense, is_indecomposable, is_isomorphic};
pub use proj::{
    is_projective, projective_cover, radical_basis as radical_basis_of, strip_projective_summands,
    syzygy, CoverData, StripResult,
};
pub use string::{empty_string_module, string_module};
pub use tensor::{regular_bimodule, tensor_bimodule_module, Bimodule};

use crate::algebra::Algebra;
use crate::field::{Coeff, FieldSpec};
use crate::matrix::Mat;
use crate::presentation::{coeff_in_field, ModuleSpec, QuiverPresentation};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ModError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("relation `{relation}` violated: {entry}")]
    RelationViolated { relation: String, entry: String },
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("field F_{p} too small: need more than {need} elements")]
    FieldTooSmall { p: u64, need: usize },
    #[error("algebra is not special biserial: {detail}")]
    NotSpecialBiserial { detail: String },
    #[error("invalid string: {detail}")]
    InvalidString { detail: String },
}

pub struct ModuleData {
    algebra: Arc<Algebra>,
    /// dimension per idempotent block
    dims: Vec<usize>,
    total: usize,
    /// matrix per algebra generator, shape dims[target] x dims[source]
    gen_actions: Vec<Mat>,
    pub(crate) cover: OnceLock<Option<CoverData>>,
    basis_act: Mutex<HashMap<usize, Arc<Mat>>>,
}

#[derive(Clone)]
pub struct Module(pub(crate) Arc<ModuleData>);

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} = {:?})", self.total_dim(), self.dims())
    }
}

impl PartialEq for Module {
    /// Structural equality: same algebra, same dimensions, same action
    /// matrices. Isomorphic modules need not be equal.
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(self.algebra(), other.algebra())
            && self.dims() == other.dims()
            && self.0.gen_actions == other.0.gen_actions
    }
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, gen_actions: Vec<Mat>) -> Module {
        assert_eq!(dims.len(), algebra.n_blocks());
        assert_eq!(gen_actions.len(), algebra.generators.len());
        for (k, &g) in algebra.generators.iter().enumerate() {
            let (s, t) = (algebra.source[g], algebra.target[g]);
            assert_eq!(
                (gen_actions[k].rows, gen_actions[k].cols),
                (dims[t], dims[s]),
                "generator {k} has wrong shape"
            );
        }
        let total = dims.iter().sum();
        Module(Arc::new(ModuleData {
            algebra,
            dims,
            total,
            gen_actions,
            cover: OnceLock::new(),
            basis_act: Mutex::new(HashMap::new()),
        }))
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let n = algebra.n_blocks();
        let f = algebra.field;
        let gen_actions =
            algebra.generators.iter().map(|_| Mat::zero(0, 0, f)).collect();
        Module::new(Arc::clone(algebra), vec![0; n], gen_actions)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.0.algebra.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn total_dim(&self) -> usize {
        self.0.total
    }

    pub fn is_zero(&self) -> bool {
        self.0.total == 0
    }

    pub fn gen_action(&self, k: usize) -> &Mat {
        &self.0.gen_actions[k]
    }

    /// Action of the algebra basis element `b` as a block matrix from
    /// its source block to its target block.
    pub fn act_basis(&self, b: usize) -> Arc<Mat> {
        if let Some(m) = self.0.basis_act.lock().unwrap().get(&b) {
            return Arc::clone(m);
        }
        let a = &self.0.algebra;
        let word = &a.words[b];
        let mut m = Mat::identity(self.0.dims[a.source[b]], a.field);
        for &k in word {
            m = self.0.gen_actions[k].mul(&m);
        }
        let m = Arc::new(m);
        self.0.basis_act.lock().unwrap().insert(b, Arc::clone(&m));
        m
    }

    /// Simple module at idempotent block `e`.
    pub fn simple(algebra: &Arc<Algebra>, e: usize) -> Module {
        let f = algebra.field;
        let n = algebra.n_blocks();
        let mut dims = vec![0; n];
        dims[e] = 1;
        let gen_actions = algebra
            .generators
            .iter()
            .map(|&g| Mat::zero(dims[algebra.target[g]], dims[algebra.source[g]], f))
            .collect();
        Module::new(Arc::clone(algebra), dims, gen_actions)
    }

    /// Indecomposable projective A·e: the column slice of the regular
    /// representation at block `e`.
    pub fn indec_projective(algebra: &Arc<Algebra>, e: usize) -> Module {
        let (m, _) = free_module(algebra, &[e]);
        m
    }

    /// The left regular module.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        Module::regular_with_layout(algebra).0
    }

    /// The left regular module plus, for every algebra basis element,
    /// its (block, position) slot inside the module.
    pub fn regular_with_layout(algebra: &Arc<Algebra>) -> (Module, Vec<(usize, usize)>) {
        let list: Vec<usize> = (0..algebra.n_blocks()).collect();
        let (m, layout) = free_module(algebra, &list);
        let mut place = vec![(0usize, 0usize); algebra.dim];
        for slots in &layout.slots {
            for &(b, blk, pos) in slots {
                place[b] = (blk, pos);
            }
        }
        (m, place)
    }

    /// Canonical JSON dump: block dims plus generator action matrices as
    /// nested arrays of exact coefficient strings.
    pub fn to_json(&self) -> Value {
        let a = &self.0.algebra;
        let mut actions = serde_json::Map::new();
        for (k, &g) in a.generators.iter().enumerate() {
            let m = &self.0.gen_actions[k];
            let rows: Vec<Value> = (0..m.rows)
                .map(|i| {
                    Value::Array((0..m.cols).map(|j| json!(m.at(i, j).to_string())).collect())
                })
                .collect();
            actions.insert(a.basis_labels[g].clone(), Value::Array(rows));
        }
        json!({
            "dims": self.0.dims,
            "total_dim": self.0.total,
            "actions": Value::Object(actions),
        })
    }
}

/// A free module ⊕_k A·e_{blocks[k]} together with a locator: for each
/// summand, the (block, position) of every A-basis element with source
/// in that summand's block.
pub struct FreeLayout {
    /// per summand: list of (algebra basis index, block, position)
    pub slots: Vec<Vec<(usize, usize, usize)>>,
    /// idempotent block per summand
    pub summands: Vec<usize>,
    /// position of the summand generator (the idempotent element) in its block
    pub gen_pos: Vec<(usize, usize)>,
}

pub fn free_module(algebra: &Arc<Algebra>, summands: &[usize]) -> (Module, FreeLayout) {
    let f = algebra.field;
    let nb = algebra.n_blocks();
    let mut dims = vec![0usize; nb];
    let mut slots: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(summands.len());
    let mut gen_pos = Vec::with_capacity(summands.len());
    for &e in summands {
        let mut my = Vec::new();
        let mut mine_gen = None;
        for b in 0..algebra.dim {
            if algebra.source[b] != e {
                continue;
            }
            let blk = algebra.target[b];
            let pos = dims[blk];
            dims[blk] += 1;
            if b == algebra.idempotents[e] {
                mine_gen = Some((blk, pos));
            }
            my.push((b, blk, pos));
        }
        slots.push(my);
        gen_pos.push(mine_gen.expect("idempotent element present in its own projective"));
    }
    let mut gen_actions: Vec<Mat> = algebra
        .generators
        .iter()
        .map(|&g| Mat::zero(dims[algebra.target[g]], dims[algebra.source[g]], f))
        .collect();
    for my in &slots {
        let index_of: HashMap<usize, (usize, usize)> =
            my.iter().map(|&(b, blk, pos)| (b, (blk, pos))).collect();
        for (k, &g) in algebra.generators.iter().enumerate() {
            for &(b, blk, pos) in my {
                if blk != algebra.source[algebra.generators[k]] {
                    continue;
                }
                for (d, c) in algebra.mult(g, b) {
                    let (dblk, dpos) = index_of[&(*d as usize)];
                    debug_assert_eq!(dblk, algebra.target[algebra.generators[k]]);
                    let old = gen_actions[k].at(dpos, pos).clone();
                    gen_actions[k].set(dpos, pos, algebra.field.add(&old, c));
                }
            }
        }
    }
    let m = Module::new(Arc::clone(algebra), dims, gen_actions);
    (m, FreeLayout { slots, summands: summands.to_vec(), gen_pos })
}

/// A module map given by one matrix per idempotent block.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub blocks: Vec<Mat>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, blocks: Vec<Mat>) -> ModuleMap {
        debug_assert_eq!(blocks.len(), source.dims().len());
        for (b, m) in blocks.iter().enumerate() {
            debug_assert_eq!((m.rows, m.cols), (target.dims()[b], source.dims()[b]));
        }
        ModuleMap { source, target, blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| Mat::zero(t, s, f))
            .collect();
        ModuleMap::new(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Mat::identity(d, f)).collect();
        ModuleMap::new(m.clone(), m.clone(), blocks)
    }

    /// self ∘ other (other acts first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMap::new(other.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks =
            self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap::new(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: &Coeff) -> ModuleMap {
        let blocks = self.blocks.iter().map(|m| m.scale(c)).collect();
        ModuleMap::new(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|m| m.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|m| m.rank()).sum()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.source.dims() == self.target.dims() && self.blocks.iter().all(|m| m.rank() == m.rows)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if self.source.dims() != self.target.dims() {
            return None;
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for m in &self.blocks {
            blocks.push(m.inverse()?);
        }
        Some(ModuleMap::new(self.target.clone(), self.source.clone(), blocks))
    }

    /// Checks f ρ_M(g) = ρ_N(g) f on all generators.
    pub fn intertwines(&self) -> bool {
        let a = self.source.algebra();
        for (k, &g) in a.generators.iter().enumerate() {
            let (s, t) = (a.source[g], a.target[g]);
            let lhs = self.blocks[t].mul(self.source.gen_action(k));
            let rhs = self.target.gen_action(k).mul(&self.blocks[s]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Kernel as a module plus its inclusion.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let a = self.source.algebra();
        let kers: Vec<Mat> = self.blocks.iter().map(|m| m.kernel()).collect();
        let dims: Vec<usize> = kers.iter().map(|k| k.cols).collect();
        let mut gen_actions = Vec::with_capacity(a.generators.len());
        for (k, &g) in a.generators.iter().enumerate() {
            let (s, t) = (a.source[g], a.target[g]);
            let moved = self.source.gen_action(k).mul(&kers[s]);
            let x = kers[t]
                .solve_matrix(&moved)
                .expect("kernel of a module map is a submodule");
            gen_actions.push(x);
        }
        let km = Module::new(Arc::clone(a), dims, gen_actions);
        let incl = ModuleMap::new(km.clone(), self.source.clone(), kers);
        (km, incl)
    }

    /// Cokernel as a module plus the projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let a = self.target.algebra();
        let (q_dims, projs, incls) = quotient_by_columns(
            self.target.dims(),
            &self.blocks,
            self.target.field(),
        );
        let mut gen_actions = Vec::with_capacity(a.generators.len());
        for (k, &g) in a.generators.iter().enumerate() {
            let (s, t) = (a.source[g], a.target[g]);
            gen_actions.push(projs[t].mul(&self.target.gen_action(k).mul(&incls[s])));
        }
        let q = Module::new(Arc::clone(a), q_dims, gen_actions);
        let proj = ModuleMap::new(self.target.clone(), q.clone(), projs);
        (q, proj)
    }

    /// Image as a submodule of the target plus its inclusion.
    pub fn image(&self) -> (Module, ModuleMap) {
        let bases: Vec<Mat> = self.blocks.iter().map(|m| m.image_basis()).collect();
        submodule_inner(&self.target, bases)
    }
}

/// Builds the submodule of `ambient` spanned by the given block columns
/// (which must already be action-closed), with its inclusion.
pub fn submodule_from_columns(ambient: &Module, bases: Vec<Mat>) -> (Module, ModuleMap) {
    submodule_inner(ambient, bases)
}

fn submodule_inner(ambient: &Module, bases: Vec<Mat>) -> (Module, ModuleMap) {
    let a = ambient.algebra();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mut gen_actions = Vec::with_capacity(a.generators.len());
    for (k, &g) in a.generators.iter().enumerate() {
        let (s, t) = (a.source[g], a.target[g]);
        let moved = ambient.gen_action(k).mul(&bases[s]);
        let x = bases[t]
            .solve_matrix(&moved)
            .expect("columns do not span a submodule");
        gen_actions.push(x);
    }
    let m = Module::new(Arc::clone(a), dims, gen_actions);
    let incl = ModuleMap::new(m.clone(), ambient.clone(), bases);
    (m, incl)
}

/// Quotient of a block-graded space by the span of the given columns:
/// returns (quotient dims, projections, representative inclusions).
pub fn quotient_by_columns(
    dims: &[usize],
    span: &[Mat],
    field: FieldSpec,
) -> (Vec<usize>, Vec<Mat>, Vec<Mat>) {
    let mut q_dims = Vec::with_capacity(dims.len());
    let mut projs = Vec::with_capacity(dims.len());
    let mut incls = Vec::with_capacity(dims.len());
    for (blk, &d) in dims.iter().enumerate() {
        // rows of the rref of span^T give the subspace in echelon form
        let rows = span[blk].transpose().row_space();
        let pivots: Vec<usize> = {
            let mut pv = Vec::new();
            for r in 0..rows.rows {
                for c in 0..rows.cols {
                    if !rows.at(r, c).is_zero() {
                        pv.push(c);
                        break;
                    }
                }
            }
            pv
        };
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let qd = free.len();
        let mut proj = Mat::zero(qd, d, field);
        for (qi, &c) in free.iter().enumerate() {
            proj.set(qi, c, field.one());
        }
        // pivot coordinate c reduces to -sum of free-coordinate entries of its row
        for (r, &c) in pivots.iter().enumerate() {
            for (qi, &fc) in free.iter().enumerate() {
                proj.set(qi, c, field.neg(rows.at(r, fc)));
            }
        }
        let mut incl = Mat::zero(d, qd, field);
        for (qi, &c) in free.iter().enumerate() {
            incl.set(c, qi, field.one());
        }
        q_dims.push(qd);
        projs.push(proj);
        incls.push(incl);
    }
    (q_dims, projs, incls)
}

/// Realizes a shape-checked module definition over a path algebra,
/// verifying every presentation relation.
pub fn realize(spec: &ModuleSpec, algebra: &Arc<Algebra>) -> Result<Module, ModError> {
    let pd = algebra.path_data().ok_or(ModError::AlgebraMismatch)?;
    let p: &QuiverPresentation = &pd.presentation;
    let f = algebra.field;
    let nb = algebra.n_blocks();
    let mut dims = vec![0usize; nb];
    for (v, d) in &spec.dims {
        let vi = p.vertex_index(v).ok_or(ModError::AlgebraMismatch)?;
        dims[vi] = *d;
    }
    let mut gen_actions = Vec::with_capacity(algebra.generators.len());
    for (k, a) in p.arrows.iter().enumerate() {
        let want_rows = dims[a.target];
        let want_cols = dims[a.source];
        let raw = spec.arrow_matrices.get(&a.name);
        let mut m = Mat::zero(want_rows, want_cols, f);
        if let Some(rows) = raw {
            for (i, row) in rows.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    m.set(i, j, coeff_in_field(c, f));
                }
            }
        }
        let _ = k;
        gen_actions.push(m);
    }
    let module = Module::new(Arc::clone(algebra), dims, gen_actions);
    verify_relations(&module)?;
    Ok(module)
}

/// Checks that every presentation relation acts as zero; returns a
/// witness entry otherwise.
pub fn verify_relations(module: &Module) -> Result<(), ModError> {
    let a = module.algebra();
    let Some(pd) = a.path_data() else {
        return Ok(());
    };
    let p = &pd.presentation;
    let f = a.field;
    let q = p.quiver();
    for rel in &p.relations {
        let src = rel[0].path.src;
        let tgt = rel[0].path.target(&q);
        let mut acc = Mat::zero(module.dims()[tgt], module.dims()[src], f);
        for term in rel {
            let mut m = Mat::identity(module.dims()[src], f);
            for &arrow in &term.path.seq {
                m = module.gen_action(arrow).mul(&m);
            }
            acc = acc.add(&m.scale(&coeff_in_field(&term.coeff, f)));
        }
        if !acc.is_zero() {
            let mut witness = String::new();
            'outer: for i in 0..acc.rows {
                for j in 0..acc.cols {
                    if !acc.at(i, j).is_zero() {
                        witness = format!("entry ({i},{j}) = {}", acc.at(i, j));
                        break 'outer;
                    }
                }
            }
            let relation = render_relation(p, rel);
            return Err(ModError::RelationViolated { relation, entry: witness });
        }
    }
    Ok(())
}

fn render_relation(
    p: &QuiverPresentation,
    rel: &[crate::presentation::RelationTerm],
) -> String {
    rel.iter()
        .map(|t| {
            let path: Vec<&str> =
                t.path.seq.iter().rev().map(|&a| p.arrows[a].name.as_str()).collect();
            format!("{}*{}", t.coeff, path.join("*"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Blockwise direct sum with the four canonical maps
/// (inj_left, inj_right, proj_left, proj_right).
pub fn direct_sum(m: &Module, n: &Module) -> (Module, [ModuleMap; 4]) {
    assert!(Algebra::same(m.algebra(), n.algebra()), "direct sum over one algebra");
    let a = m.algebra();
    let f = m.field();
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(&x, &y)| x + y).collect();
    let mut gen_actions = Vec::with_capacity(a.generators.len());
    for (k, &g) in a.generators.iter().enumerate() {
        let (s, t) = (a.source[g], a.target[g]);
        let mut big = Mat::zero(dims[t], dims[s], f);
        let am = m.gen_action(k);
        let bn = n.gen_action(k);
        for i in 0..am.rows {
            for j in 0..am.cols {
                big.set(i, j, am.at(i, j).clone());
            }
        }
        for i in 0..bn.rows {
            for j in 0..bn.cols {
                big.set(m.dims()[t] + i, m.dims()[s] + j, bn.at(i, j).clone());
            }
        }
        gen_actions.push(big);
    }
    let sum = Module::new(Arc::clone(a), dims, gen_actions);
    let dims = sum.dims().to_vec();
    let inj_l = {
        let mut blocks = Vec::new();
        for (blk, &d) in m.dims().iter().enumerate() {
            let mut mat = Mat::zero(dims[blk], d, f);
            for i in 0..d {
                mat.set(i, i, f.one());
            }
            blocks.push(mat);
        }
        ModuleMap::new(m.clone(), sum.clone(), blocks)
    };
    let inj_r = {
        let mut blocks = Vec::new();
        for (blk, &d) in n.dims().iter().enumerate() {
            let mut mat = Mat::zero(dims[blk], d, f);
            for i in 0..d {
                mat.set(m.dims()[blk] + i, i, f.one());
            }
            blocks.push(mat);
        }
        ModuleMap::new(n.clone(), sum.clone(), blocks)
    };
    let proj_l = {
        let mut blocks = Vec::new();
        for (blk, &d) in m.dims().iter().enumerate() {
            let mut mat = Mat::zero(d, dims[blk], f);
            for i in 0..d {
                mat.set(i, i, f.one());
            }
            blocks.push(mat);
        }
        ModuleMap::new(sum.clone(), m.clone(), blocks)
    };
    let proj_r = {
        let mut blocks = Vec::new();
        for (blk, &d) in n.dims().iter().enumerate() {
            let mut mat = Mat::zero(d, dims[blk], f);
            for i in 0..d {
                mat.set(i, m.dims()[blk] + i, f.one());
            }
            blocks.push(mat);
        }
        ModuleMap::new(sum.clone(), n.clone(), blocks)
    };
    (sum, [inj_l, inj_r, proj_l, proj_r])
}

/// Builds the module map out of a free module determined by the images
/// of the summand generators; `gen_images[k]` is a vector in the target
/// block `layout.summands[k]`.
pub fn map_from_free(
    free: &Module,
    layout_slots: &[Vec<(usize, usize, usize)>],
    target: &Module,
    gen_images: &[Vec<Coeff>],
) -> ModuleMap {
    let f = free.field();
    let mut blocks: Vec<Mat> = target
        .dims()
        .iter()
        .zip(free.dims())
        .map(|(&dt, &dp)| Mat::zero(dt, dp, f))
        .collect();
    for (k, slots) in layout_slots.iter().enumerate() {
        for &(b, blk, pos) in slots {
            let act = target.act_basis(b);
            let col = act.apply(&gen_images[k]);
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    blocks[blk].set(i, pos, v);
                }
            }
        }
    }
    ModuleMap::new(free.clone(), target.clone(), blocks)
}

/// Reassembles a module from unstructured operators on a plain vector
/// space: images of the idempotent operators fix the block grading, and
/// the generator operators are rewritten in the adapted basis.
pub fn module_from_operators(
    algebra: &Arc<Algebra>,
    dim: usize,
    idem_ops: &[Mat],
    gen_ops: &[Mat],
) -> Module {
    let f = algebra.field;
    let nb = algebra.n_blocks();
    assert_eq!(idem_ops.len(), nb);
    let bases: Vec<Mat> = idem_ops.iter().map(|p| p.image_basis()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    assert_eq!(dims.iter().sum::<usize>(), dim, "idempotent images must decompose the space");
    let mut t = Mat::zero(dim, 0, f);
    for b in &bases {
        t = t.hstack(b);
    }
    let t_inv = t.inverse().expect("adapted basis is invertible");
    let offsets: Vec<usize> = {
        let mut off = Vec::with_capacity(nb);
        let mut acc = 0;
        for &d in &dims {
            off.push(acc);
            acc += d;
        }
        off
    };
    let mut gen_actions = Vec::with_capacity(algebra.generators.len());
    for (k, &g) in algebra.generators.iter().enumerate() {
        let (s, tt) = (algebra.source[g], algebra.target[g]);
        let x = t_inv.mul(&gen_ops[k]).mul(&t);
        let mut blockm = Mat::zero(dims[tt], dims[s], f);
        for i in 0..dims[tt] {
            for j in 0..dims[s] {
                blockm.set(i, j, x.at(offsets[tt] + i, offsets[s] + j).clone());
            }
        }
        // off-block entries of the source columns must vanish
        debug_assert!({
            let mut ok = true;
            for r in 0..dim {
                if r >= offsets[tt] && r < offsets[tt] + dims[tt] {
                    continue;
                }
                for j in 0..dims[s] {
                    if !x.at(r, offsets[s] + j).is_zero() {
                        ok = false;
                    }
                }
            }
            ok
        });
        gen_actions.push(blockm);
    }
    Module::new(Arc::clone(algebra), dims, gen_actions)
}

/// Vector-space dual as a left module over the given opposite algebra.
/// `aop` must be `opposite(M.algebra())`.
pub fn dual_space_module(m: &Module, aop: &Arc<Algebra>) -> Module {
    let a = m.algebra();
    assert_eq!(a.dim, aop.dim);
    let gen_actions: Vec<Mat> = (0..a.generators.len())
        .map(|k| m.gen_action(k).transpose())
        .collect();
    Module::new(Arc::clone(aop), m.dims().to_vec(), gen_actions)
}
