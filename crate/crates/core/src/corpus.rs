//! Built-in example corpus: the presentations, string modules, and
//! radical-layer modules that the verification suites run on, plus the
//! expected-fact tables with provenance.

use crate::algebra::{build_path_algebra, Algebra};
use crate::modrep::{string_module, Module};
use crate::presentation::{parse_presentation, Direction, StringWord};
use std::sync::Arc;

/// Six-vertex special biserial algebra: three outer/inner vertex pairs
/// i, i' with arrows a_i: i' -> i, b_i: i -> i', g_i: i -> i+2 and the
/// relations b_i*a_i, g_i*a_i, b_{i-1}*g_i, a_i*b_i - (g g g)^2.
pub const FIG1_TEXT: &str = "algebra L0 { field Q ;\n  vertices 0, 1, 2, 0p, 1p, 2p ;\n  arrows a0 : 0p -> 0, a1 : 1p -> 1, a2 : 2p -> 2,\n         b0 : 0 -> 0p, b1 : 1 -> 1p, b2 : 2 -> 2p,\n         g0 : 0 -> 2, g1 : 1 -> 0, g2 : 2 -> 1 ;\n  relations b0*a0 ; b1*a1 ; b2*a2 ;\n            g0*a0 ; g1*a1 ; g2*a2 ;\n            b2*g0 ; b0*g1 ; b1*g2 ;\n            a0*b0 - g1*g2*g0*g1*g2*g0 ;\n            a1*b1 - g2*g0*g1*g2*g0*g1 ;\n            a2*b2 - g0*g1*g2*g0*g1*g2 ; }";

/// Self-injective Nakayama algebra on the 3-cycle with all paths of
/// length 18 equal to zero (the three rotations of the 18-cycle).
pub fn fig2_text() -> String {
    let cycle = |start: usize| -> String {
        // textual path order: last applied arrow first; the cycle at
        // `start` applies g_start first
        let mut arrows = Vec::new();
        let mut v = start;
        for _ in 0..18 {
            arrows.push(format!("g{v}"));
            v = (v + 2) % 3;
        }
        arrows.reverse();
        arrows.join("*")
    };
    format!(
        "algebra Z3 {{ field Q ;\n  vertices 0, 1, 2 ;\n  arrows g0 : 0 -> 2, g1 : 1 -> 0, g2 : 2 -> 1 ;\n  relations {} ;\n            {} ;\n            {} ; }}",
        cycle(0),
        cycle(1),
        cycle(2)
    )
}

/// Radical-square-zero two-vertex algebra with a loop: CM-free and not
/// Gorenstein.
pub const EX36_LAMBDA_TEXT: &str = "algebra Lam { field Q ;\n  vertices 1, 2 ;\n  arrows al : 1 -> 1, be : 1 -> 2 ;\n  relations al*al ; be*al ; }";

/// One-vertex algebra k[ga]/(ga^2): self-injective Nakayama of Loewy
/// length two.
pub const EX36_GAMMA_TEXT: &str =
    "algebra Gam { field Q ; vertices 3 ; arrows ga : 3 -> 3 ; relations ga*ga ; }";

/// k[x]/(x^2) under a different vertex name, used for the smallest
/// bimodule-level checks.
pub const DUAL_NUMBERS_TEXT: &str =
    "algebra D { field Q ; vertices v ; arrows x : v -> v ; relations x*x ; }";

pub struct Corpus {
    pub fig1: Arc<Algebra>,
    pub fig2: Arc<Algebra>,
    pub ex36_lambda: Arc<Algebra>,
    pub ex36_gamma: Arc<Algebra>,
    pub dual_numbers: Arc<Algebra>,
}

impl Corpus {
    pub fn build() -> Corpus {
        Corpus {
            fig1: build_path_algebra(&parse_presentation(FIG1_TEXT).unwrap()).unwrap(),
            fig2: build_path_algebra(&parse_presentation(&fig2_text()).unwrap()).unwrap(),
            ex36_lambda: build_path_algebra(&parse_presentation(EX36_LAMBDA_TEXT).unwrap())
                .unwrap(),
            ex36_gamma: build_path_algebra(&parse_presentation(EX36_GAMMA_TEXT).unwrap()).unwrap(),
            dual_numbers: build_path_algebra(&parse_presentation(DUAL_NUMBERS_TEXT).unwrap())
                .unwrap(),
        }
    }

    /// The walk word of the string module V_{i,j}: the first 6-j letters
    /// of a_{i+1}^-1 g_{i+2} g_i g_{i+1} g_{i+2} g_i.
    pub fn v_word(&self, i: usize, j: usize) -> StringWord {
        assert!(i < 3 && j < 5);
        let p = &self.fig1.path_data().unwrap().presentation;
        let arrow = |n: &str| p.arrow_index(n).unwrap();
        let g = |k: usize| arrow(&format!("g{}", k % 3));
        let a = |k: usize| arrow(&format!("a{}", k % 3));
        let full = vec![
            (a(i + 1), Direction::Inverse),
            (g(i + 2), Direction::Direct),
            (g(i), Direction::Direct),
            (g(i + 1), Direction::Direct),
            (g(i + 2), Direction::Direct),
            (g(i), Direction::Direct),
        ];
        StringWord {
            name: format!("V_{i}_{j}"),
            algebra: "L0".into(),
            letters: full[..6 - j].to_vec(),
        }
    }

    /// String module V_{i,j} over the six-vertex algebra.
    pub fn v_module(&self, i: usize, j: usize) -> Module {
        string_module(&self.fig1, &self.v_word(i, j)).unwrap()
    }

    /// Radical layer quotient P_i / rad^m over the Nakayama algebra, as
    /// the string module of the path of length m-1 out of vertex i.
    pub fn nakayama_layer(&self, i: usize, m: usize) -> Module {
        assert!(m >= 1 && m <= 17);
        if m == 1 {
            return Module::simple(&self.fig2, i);
        }
        let p = &self.fig2.path_data().unwrap().presentation;
        let arrow = |k: usize| p.arrow_index(&format!("g{}", k % 3)).unwrap();
        // textual order: last applied first; the path applies g_i first
        let mut letters = Vec::new();
        let mut v = i;
        for _ in 0..m - 1 {
            letters.push((arrow(v), Direction::Direct));
            v = (v + 2) % 3;
        }
        letters.reverse();
        let w = StringWord { name: format!("M_{i}_{m}"), algebra: "Z3".into(), letters };
        string_module(&self.fig2, &w).unwrap()
    }

    /// The simple module over k[ga]/(ga^2).
    pub fn s3(&self) -> Module {
        Module::simple(&self.ex36_gamma, 0)
    }

    /// The simple module over k[x]/(x^2).
    pub fn s_dual(&self) -> Module {
        Module::simple(&self.dual_numbers, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_document;

    #[test]
    fn corpus_builds() {
        let c = Corpus::build();
        assert_eq!(c.fig2.dim, 54);
        assert_eq!(c.ex36_lambda.dim, 4);
        assert_eq!(c.ex36_gamma.dim, 2);
        assert_eq!(c.dual_numbers.dim, 2);
    }

    #[test]
    fn parse_full_document_roundtrip() {
        let doc = format!("{FIG1_TEXT}\n{EX36_LAMBDA_TEXT}");
        let d = parse_document(&doc).unwrap();
        assert_eq!(d.algebras.len(), 2);
    }
}
