//! String modules over special biserial quotient path algebras.

use super::{verify_relations, ModError, Module};
use crate::algebra::Algebra;
use crate::matrix::Mat;
use crate::presentation::{Direction, StringWord};
use crate::rewrite::Path;
use std::sync::Arc;

/// Checks the counting half of the special biserial condition: at most
/// two arrows in and out of every vertex.
fn check_special_biserial(a: &Algebra) -> Result<(), ModError> {
    let pd = a.path_data().ok_or(ModError::NotSpecialBiserial {
        detail: "algebra carries no quiver presentation".into(),
    })?;
    let q = pd.presentation.quiver();
    for v in 0..q.n_vertices {
        let outs = q.arrows.iter().filter(|&&(s, _)| s == v).count();
        let ins = q.arrows.iter().filter(|&&(_, t)| t == v).count();
        if outs > 2 || ins > 2 {
            return Err(ModError::NotSpecialBiserial {
                detail: format!(
                    "vertex {} has {} outgoing and {} incoming arrows",
                    pd.presentation.vertices[v], outs, ins
                ),
            });
        }
    }
    Ok(())
}

/// The simple module as the string module of the empty word at `v`.
pub fn empty_string_module(a: &Arc<Algebra>, vertex: usize) -> Module {
    Module::simple(a, vertex)
}

/// Builds the string module of a validated walk word: one basis vector
/// per walk vertex; direct letters act down the walk, inverse letters
/// up; everything else acts as zero.
pub fn string_module(a: &Arc<Algebra>, w: &StringWord) -> Result<Module, ModError> {
    check_special_biserial(a)?;
    let pd = a.path_data().unwrap();
    let q = pd.presentation.quiver();
    let nl = w.letters.len();
    if nl == 0 {
        return Err(ModError::InvalidString { detail: "empty word needs a base vertex".into() });
    }

    // walk vertices u_0 .. u_n; letter k (0-based) joins u_k and u_{k+1}
    let mut walk = Vec::with_capacity(nl + 1);
    {
        let (_, t0) = w.letter_endpoints(&q, 0);
        walk.push(t0);
        for k in 0..nl {
            let (s, _) = w.letter_endpoints(&q, k);
            walk.push(s);
        }
    }

    // no subpath of the walk may lie in the ideal: reduce the maximal
    // direct runs and the reversals of the maximal inverse runs
    let mut k = 0;
    while k < nl {
        let dir = w.letters[k].1;
        let mut j = k;
        while j + 1 < nl && w.letters[j + 1].1 == dir {
            j += 1;
        }
        // textual run k..=j; as a path the rightmost letter acts first
        let arrows: Vec<usize> = match dir {
            Direction::Direct => (k..=j).rev().map(|i| w.letters[i].0).collect(),
            Direction::Inverse => (k..=j).map(|i| w.letters[i].0).collect(),
        };
        let src = q.source(arrows[0]);
        let p = Path { src, seq: arrows };
        debug_assert!(p.is_composable(&q));
        if pd.rewrite.reduce_path(p, a.field.one()).is_empty() {
            return Err(ModError::InvalidString {
                detail: format!("letters {k}..={j} compose into the relation ideal"),
            });
        }
        k = j + 1;
    }

    // assemble the representation
    let nb = a.n_blocks();
    let mut dims = vec![0usize; nb];
    let mut pos = Vec::with_capacity(nl + 1);
    for &v in &walk {
        pos.push(dims[v]);
        dims[v] += 1;
    }
    let f = a.field;
    let mut gen_actions: Vec<Mat> = a
        .generators
        .iter()
        .map(|&g| Mat::zero(dims[a.target[g]], dims[a.source[g]], f))
        .collect();
    for k in 0..nl {
        let (arrow, dir) = w.letters[k];
        // direct: arrow u_{k+1} -> u_k, acting z_{k+1} |-> z_k
        // inverse: arrow u_k -> u_{k+1}, acting z_k |-> z_{k+1}
        let (from, to) = match dir {
            Direction::Direct => (k + 1, k),
            Direction::Inverse => (k, k + 1),
        };
        if !gen_actions[arrow].at(pos[to], pos[from]).is_zero() {
            return Err(ModError::InvalidString {
                detail: format!("walk revisits the action slot of letter {k}"),
            });
        }
        gen_actions[arrow].set(pos[to], pos[from], f.one());
    }
    let m = Module::new(Arc::clone(a), dims, gen_actions);
    // full relation check catches non-monomial relations the run test
    // cannot see
    verify_relations(&m).map_err(|e| ModError::InvalidString { detail: e.to_string() })?;
    Ok(m)
}
