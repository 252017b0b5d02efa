//! Path rewriting modulo an admissible ideal.
//!
//! Paths are stored as arrow sequences in application order (the first
//! entry acts first). Rules rewrite a leading path to a linear
//! combination of smaller paths under the length-then-lex well-order;
//! completion resolves overlaps until reduction is confluent on all
//! paths up to the configured length bound.

use crate::field::{Coeff, FieldSpec};
use std::collections::BTreeMap;

/// Directed multigraph underlying a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub n_vertices: usize,
    /// (source, target) per arrow.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].0
    }
    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].1
    }
}

/// A composable path: `seq` lists arrows in application order; an empty
/// `seq` is the trivial path at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub seq: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v, seq: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.seq.last().map_or(self.src, |&a| q.target(a))
    }

    pub fn is_composable(&self, q: &Quiver) -> bool {
        let mut at = self.src;
        for &a in &self.seq {
            if q.source(a) != at {
                return false;
            }
            at = q.target(a);
        }
        true
    }

    /// `self` after `first` (apply `first`, then `self`).
    pub fn compose_after(&self, first: &Path, q: &Quiver) -> Option<Path> {
        if first.target(q) != self.src {
            return None;
        }
        let mut seq = first.seq.clone();
        seq.extend_from_slice(&self.seq);
        Some(Path { src: first.src, seq })
    }

    /// Length-then-lex comparison on the arrow sequence.
    pub fn cmp_llex(&self, other: &Path) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.seq.cmp(&other.seq))
            .then_with(|| self.src.cmp(&other.src))
    }
}

/// Linear combination of paths, kept sorted descending in the
/// length-lex order with nonzero coefficients.
pub type Poly = Vec<(Path, Coeff)>;

fn poly_normalize(mut terms: Poly, field: &FieldSpec) -> Poly {
    terms.sort_by(|a, b| b.0.cmp_llex(&a.0));
    let mut out: Poly = Vec::with_capacity(terms.len());
    for (p, c) in terms {
        if let Some(last) = out.last_mut() {
            if last.0 == p {
                last.1 = field.add(&last.1, &c);
                continue;
            }
        }
        out.push((p, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn poly_add_scaled(a: &Poly, b: &Poly, s: &Coeff, field: &FieldSpec) -> Poly {
    let mut terms = a.clone();
    for (p, c) in b {
        terms.push((p.clone(), field.mul(c, s)));
    }
    poly_normalize(terms, field)
}

/// One rewrite rule: `lead` maps to `rhs`, every rhs path strictly
/// smaller than `lead`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Path,
    pub rhs: Poly,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub rules: Vec<Rule>,
    pub length_bound: usize,
    /// rules indexed by first arrow of the lead, for fast matching
    by_first: BTreeMap<usize, Vec<usize>>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("no finite basis below the length bound; irreducible witness path of length {len}: {witness}")]
    NotFiniteDimensional { len: usize, witness: String },
    #[error("completion exceeded the work cap; the ideal is unlikely to be admissible")]
    CompletionDiverged,
}

impl RewriteSystem {
    /// Builds a confluent system from relation polynomials by overlap
    /// completion.
    pub fn complete(
        quiver: Quiver,
        field: FieldSpec,
        relations: &[Poly],
        length_bound: usize,
    ) -> Result<RewriteSystem, RewriteError> {
        let mut sys = RewriteSystem {
            quiver,
            field,
            rules: Vec::new(),
            length_bound,
            by_first: BTreeMap::new(),
        };
        // FIFO: all seed relations become rules before any overlap is
        // examined, otherwise overlap consequences can starve the seeds
        let mut queue: std::collections::VecDeque<Poly> =
            relations.iter().map(|r| poly_normalize(r.clone(), &field)).collect();
        let mut steps = 0usize;
        while let Some(rel) = queue.pop_front() {
            steps += 1;
            if steps > 100_000 {
                return Err(RewriteError::CompletionDiverged);
            }
            let reduced = sys.reduce_poly(rel);
            if reduced.is_empty() {
                continue;
            }
            // make monic: lead coefficient 1
            let lead_inv = field.inv(&reduced[0].1).unwrap();
            let lead = reduced[0].0.clone();
            let rhs: Poly = reduced[1..]
                .iter()
                .map(|(p, c)| (p.clone(), field.neg(&field.mul(c, &lead_inv))))
                .collect();
            let new_idx = sys.rules.len();
            sys.rules.push(Rule { lead: lead.clone(), rhs });
            if let Some(&first) = lead.seq.first() {
                sys.by_first.entry(first).or_default().push(new_idx);
            }
            // queue all critical pairs of the new rule with every rule
            for i in 0..sys.rules.len() {
                for pair in sys.critical_pairs(i, new_idx) {
                    queue.push_back(pair);
                }
                if i != new_idx {
                    for pair in sys.critical_pairs(new_idx, i) {
                        queue.push_back(pair);
                    }
                }
            }
        }
        Ok(sys)
    }

    /// Critical pairs of rules i, j: words where a suffix of lead_i
    /// overlaps a prefix of lead_j, or lead_j sits inside lead_i.
    fn critical_pairs(&self, i: usize, j: usize) -> Vec<Poly> {
        let li = &self.rules[i].lead;
        let lj = &self.rules[j].lead;
        let mut out = Vec::new();
        // proper overlap: last k arrows of li = first k arrows of lj
        for k in 1..li.len().min(lj.len()) {
            if li.seq[li.len() - k..] == lj.seq[..k] {
                // w = li.seq ++ lj.seq[k..]
                let mut w = li.seq.clone();
                w.extend_from_slice(&lj.seq[k..]);
                let word = Path { src: li.src, seq: w };
                out.push(self.spolynomial(&word, i, 0, j, li.len() - k));
            }
        }
        // containment: lj inside li (strictly)
        if lj.len() < li.len() {
            for pos in 0..=(li.len() - lj.len()) {
                if li.seq[pos..pos + lj.len()] == lj.seq[..] {
                    out.push(self.spolynomial(li, i, 0, j, pos));
                }
            }
        }
        out
    }

    /// Difference of the two one-step reductions of `word` (rule `i` at
    /// `pos_i`, rule `j` at `pos_j`).
    fn spolynomial(&self, word: &Path, i: usize, pos_i: usize, j: usize, pos_j: usize) -> Poly {
        let a = self.apply_rule_at(word, i, pos_i);
        let b = self.apply_rule_at(word, j, pos_j);
        poly_add_scaled(&a, &b, &self.field.from_i64(-1), &self.field)
    }

    fn apply_rule_at(&self, word: &Path, rule: usize, pos: usize) -> Poly {
        let r = &self.rules[rule];
        let k = r.lead.len();
        debug_assert_eq!(&word.seq[pos..pos + k], &r.lead.seq[..]);
        let mut out: Poly = Vec::new();
        for (p, c) in &r.rhs {
            let mut seq = word.seq[..pos].to_vec();
            seq.extend_from_slice(&p.seq);
            seq.extend_from_slice(&word.seq[pos + k..]);
            out.push((Path { src: word.src, seq }, c.clone()));
        }
        poly_normalize(out, &self.field)
    }

    /// First (leftmost, lowest rule index) redex in `p`, if any.
    fn find_redex(&self, p: &Path) -> Option<(usize, usize)> {
        for pos in 0..p.len() {
            if let Some(cands) = self.by_first.get(&p.seq[pos]) {
                for &ri in cands {
                    let lead = &self.rules[ri].lead;
                    if pos + lead.len() <= p.len() && p.seq[pos..pos + lead.len()] == lead.seq[..] {
                        return Some((ri, pos));
                    }
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, p: &Path) -> bool {
        self.find_redex(p).is_none()
    }

    /// Normal form of a single path.
    pub fn reduce_path(&self, p: Path, c: Coeff) -> Poly {
        self.reduce_poly(vec![(p, c)])
    }

    /// Normal form of a linear combination.
    pub fn reduce_poly(&self, poly: Poly) -> Poly {
        let mut work = poly_normalize(poly, &self.field);
        let mut done: Poly = Vec::new();
        while let Some((p, c)) = work.first().cloned() {
            match self.find_redex(&p) {
                None => {
                    done.push((p, c));
                    work.remove(0);
                }
                Some((ri, pos)) => {
                    work.remove(0);
                    let replaced = self.apply_rule_at(&p, ri, pos);
                    work = poly_add_scaled(&work, &replaced, &c, &self.field);
                }
            }
        }
        poly_normalize(done, &self.field)
    }

    /// Enumerates all irreducible paths, shortest first, erroring with a
    /// witness if one of length `length_bound` appears.
    pub fn irreducible_paths(&self) -> Result<Vec<Path>, RewriteError> {
        let mut out: Vec<Path> = (0..self.quiver.n_vertices).map(Path::trivial).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.target(&self.quiver);
                for (a, &(s, _)) in self.quiver.arrows.iter().enumerate() {
                    if s != end {
                        continue;
                    }
                    let mut seq = p.seq.clone();
                    seq.push(a);
                    let q = Path { src: p.src, seq };
                    if self.is_irreducible(&q) {
                        if q.len() >= self.length_bound {
                            return Err(RewriteError::NotFiniteDimensional {
                                len: q.len(),
                                witness: format!("{:?}", q.seq),
                            });
                        }
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| a.cmp_llex(b).then_with(|| a.src.cmp(&b.src)));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_one() -> Coeff {
        FieldSpec::Rationals.from_i64(1)
    }

    #[test]
    fn loop_square_zero() {
        // one vertex, one loop x, relation x*x
        let q = Quiver { n_vertices: 1, arrows: vec![(0, 0)] };
        let rel: Poly = vec![(Path { src: 0, seq: vec![0, 0] }, q_one())];
        let sys = RewriteSystem::complete(q, FieldSpec::Rationals, &[rel], 30).unwrap();
        let basis = sys.irreducible_paths().unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn cyclic_nakayama_cube() {
        // 3-cycle 0->1->2->0, all length-3 paths zero: dim 9
        let q = Quiver { n_vertices: 3, arrows: vec![(0, 1), (1, 2), (2, 0)] };
        let rels: Vec<Poly> = (0..3)
            .map(|v| {
                let seq: Vec<usize> = (0..3).map(|k| (v + k) % 3).collect();
                vec![(Path { src: v, seq }, q_one())]
            })
            .collect();
        let sys = RewriteSystem::complete(q, FieldSpec::Rationals, &rels, 30).unwrap();
        assert_eq!(sys.irreducible_paths().unwrap().len(), 9);
    }

    #[test]
    fn polynomial_ring_is_not_finite() {
        let q = Quiver { n_vertices: 1, arrows: vec![(0, 0)] };
        let sys = RewriteSystem::complete(q, FieldSpec::Rationals, &[], 10).unwrap();
        let err = sys.irreducible_paths().unwrap_err();
        matches!(err, RewriteError::NotFiniteDimensional { len: 10, .. });
    }

    #[test]
    fn binomial_relation_reduces() {
        // two loops x,y at one vertex; x*x -> y (length-lex: xx > y),
        // plus xy, yx, yy zero: finite
        let q = Quiver { n_vertices: 1, arrows: vec![(0, 0), (0, 0)] };
        let f = FieldSpec::Rationals;
        let xx = Path { src: 0, seq: vec![0, 0] };
        let y = Path { src: 0, seq: vec![1] };
        let rels: Vec<Poly> = vec![
            vec![(xx, q_one()), (y.clone(), f.from_i64(-1))],
            vec![(Path { src: 0, seq: vec![0, 1] }, q_one())],
            vec![(Path { src: 0, seq: vec![1, 0] }, q_one())],
            vec![(Path { src: 0, seq: vec![1, 1] }, q_one())],
        ];
        let sys = RewriteSystem::complete(q, f, &rels, 30).unwrap();
        let basis = sys.irreducible_paths().unwrap();
        // e, x, y; xx reduces to y, xxx -> xy -> 0
        assert_eq!(basis.len(), 3);
        let red = sys.reduce_path(Path { src: 0, seq: vec![0, 0, 0] }, q_one());
        assert!(red.is_empty());
    }
}
