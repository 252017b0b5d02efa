//! Frozen module-level facts for the built-in corpus, computed by hand
//! from the quiver presentations and pinned here as oracle values.

use gpdef_core::corpus::Corpus;
use gpdef_core::homology::{ext_dim, stable_hom};
use gpdef_core::modrep::{
    find_isomorphism, hom_space, hom_space_dense, is_isomorphic, projective_cover,
    strip_projective_summands, syzygy, Module,
};
use std::sync::OnceLock;

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(Corpus::build)
}

#[test]
fn six_vertex_algebra_dimension() {
    let c = corpus();
    // 8 paths out of each outer vertex, 2 out of each primed vertex
    assert_eq!(c.fig1.dim, 30);
    c.fig1.verify_invariants().unwrap();
}

#[test]
fn projective_dimensions() {
    let c = corpus();
    for e in 0..3 {
        assert_eq!(Module::indec_projective(&c.fig1, e).total_dim(), 8);
    }
    for e in 3..6 {
        assert_eq!(Module::indec_projective(&c.fig1, e).total_dim(), 2);
    }
    for e in 0..3 {
        assert_eq!(Module::indec_projective(&c.fig2, e).total_dim(), 18);
    }
    assert_eq!(Module::indec_projective(&c.dual_numbers, 0).total_dim(), 2);
}

#[test]
fn string_module_dimensions() {
    let c = corpus();
    for i in 0..3 {
        for j in 0..5 {
            let v = c.v_module(i, j);
            assert_eq!(v.total_dim(), 7 - j, "V_{i}{j}");
        }
    }
}

#[test]
fn syzygy_permutation() {
    let c = corpus();
    for i in 0..3 {
        let om0 = syzygy(&c.v_module(i, 0), 1);
        assert!(is_isomorphic(&om0, &c.v_module((i + 2) % 3, 4)), "syzygy of V_{i}0");
        let om1 = syzygy(&c.v_module(i, 1), 1);
        assert!(is_isomorphic(&om1, &c.v_module((i + 1) % 3, 3)), "syzygy of V_{i}1");
        let om2 = syzygy(&c.v_module(i, 2), 1);
        assert!(is_isomorphic(&om2, &c.v_module(i, 2)), "syzygy of V_{i}2");
    }
}

#[test]
fn syzygy_closes_up_on_the_string_family() {
    let c = corpus();
    // the family is closed under syzygy: the remaining cases
    for i in 0..3 {
        let om3 = syzygy(&c.v_module(i, 3), 1);
        assert_eq!(om3.total_dim(), 6);
        assert!(is_isomorphic(&om3, &c.v_module((i + 2) % 3, 1)), "syzygy of V_{i}3");
        let om4 = syzygy(&c.v_module(i, 4), 1);
        assert_eq!(om4.total_dim(), 7);
        assert!(is_isomorphic(&om4, &c.v_module((i + 1) % 3, 0)), "syzygy of V_{i}4");
    }
}

#[test]
fn endomorphism_dimensions() {
    let c = corpus();
    // End dims computed by hand: 2 for j in {0,1,2}, 1 for j in {3,4}
    for i in 0..3 {
        for (j, want) in [(0usize, 2usize), (1, 2), (2, 2), (3, 1), (4, 1)] {
            let v = c.v_module(i, j);
            assert_eq!(hom_space(&v, &v).len(), want, "End V_{i}{j}");
            assert_eq!(hom_space_dense(&v, &v).len(), want, "dense End V_{i}{j}");
        }
    }
}

#[test]
fn stable_endomorphisms_are_one_dimensional() {
    let c = corpus();
    for i in 0..3 {
        for j in 0..5 {
            let v = c.v_module(i, j);
            let (d, _) = stable_hom(&v, &v);
            assert_eq!(d, 1, "stable End V_{i}{j}");
        }
    }
    let (d, _) = stable_hom(&c.s3(), &c.s3());
    assert_eq!(d, 1);
}

#[test]
fn self_extension_table() {
    let c = corpus();
    // the unique self-extension sits at the syzygy-fixed modules j = 2
    for i in 0..3 {
        for j in 0..5 {
            let v = c.v_module(i, j);
            let want = if j == 2 { 1 } else { 0 };
            assert_eq!(ext_dim(&v, &v, 1), want, "Ext^1(V_{i}{j}, V_{i}{j})");
        }
    }
}

#[test]
fn ext_of_simple_over_dual_numbers() {
    let c = corpus();
    let s = c.s3();
    assert_eq!(ext_dim(&s, &s, 1), 1);
    assert_eq!(ext_dim(&s, &s, 2), 1);
}

#[test]
fn covers_and_kernels() {
    let c = corpus();
    let s = c.s_dual();
    let cover = projective_cover(&s).unwrap();
    assert_eq!(cover.p.total_dim(), 2);
    let om = syzygy(&s, 1);
    assert!(is_isomorphic(&om, &s));
    // projective cover of a projective is the identity-sized cover
    let p = Module::indec_projective(&c.fig1, 0);
    let cp = projective_cover(&p).unwrap();
    assert_eq!(cp.p.total_dim(), p.total_dim());
    assert!(syzygy(&p, 1).is_zero());
}

#[test]
fn nakayama_simple_resolution_is_periodic() {
    let c = corpus();
    let s = Module::simple(&c.fig2, 0);
    let cover = projective_cover(&s).unwrap();
    assert_eq!(cover.p.total_dim(), 18);
    let om = syzygy(&s, 1);
    assert_eq!(om.total_dim(), 17);
}

#[test]
fn stripping_behavior() {
    let c = corpus();
    let p = Module::indec_projective(&c.fig1, 3);
    let r = strip_projective_summands(&p);
    assert!(r.core.is_zero());
    assert_eq!(r.peeled, vec![3]);

    let v = c.v_module(0, 3);
    let (sum, _) = gpdef_core::modrep::direct_sum(&v, &p);
    let r = strip_projective_summands(&sum);
    assert_eq!(r.peeled, vec![3]);
    assert!(is_isomorphic(&r.core, &v));
    // idempotence
    let r2 = strip_projective_summands(&r.core);
    assert!(r2.peeled.is_empty());
    assert_eq!(r2.core.total_dim(), r.core.total_dim());
}

#[test]
fn isomorphism_basics() {
    let c = corpus();
    let v = c.v_module(1, 2);
    assert!(is_isomorphic(&v, &v));
    let s1 = Module::simple(&c.fig1, 0);
    let s2 = Module::simple(&c.fig1, 1);
    assert!(!is_isomorphic(&s1, &s2));
    assert!(find_isomorphism(&v, &c.v_module(1, 3)).is_none());
}

#[test]
fn hom_against_projective_matches_block_dim() {
    let c = corpus();
    // dim Hom(P_e, M) = dim e·M
    for i in 0..3 {
        let v = c.v_module(i, 0);
        for e in 0..6 {
            let p = Module::indec_projective(&c.fig1, e);
            assert_eq!(hom_space(&p, &v).len(), v.dims()[e]);
        }
    }
}
