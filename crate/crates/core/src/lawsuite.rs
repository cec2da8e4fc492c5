//! Exhaustive identity checks over basis tuples.
//!
//! Every law here is multilinear, so checking all basis tuples decides it;
//! `cases` counts the tuples visited. A failed law is reported, never
//! raised: the first failing tuple is kept with both sides rendered.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::branchops::{BranchContext, MapKind};
use crate::coeffring::MultiPoly;
use crate::frobalg::FrobeniusAlgebra;
use crate::linmap::LinearMap;
use crate::tensor::{index_tuple, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Basis indices of the failing input tuple.
    pub indices: Vec<usize>,
    /// The same tuple as basis labels.
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub variant: Option<String>,
    pub passed: bool,
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
    /// Reported for comparison only; does not count toward the verdict.
    pub informational: bool,
}

impl LawReport {
    fn new(law: &str, cases: usize, counterexample: Option<Counterexample>) -> Self {
        LawReport {
            law: law.to_string(),
            variant: None,
            passed: counterexample.is_none(),
            cases,
            counterexample,
            informational: false,
        }
    }

    pub fn with_variant(mut self, variant: &str) -> Self {
        self.variant = Some(variant.to_string());
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    /// Failed and counts toward the overall verdict.
    pub fn is_blocking_failure(&self) -> bool {
        !self.passed && !self.informational
    }
}

/// Accumulates cases and keeps the first counterexample.
pub(crate) struct Checker<'a> {
    alg: &'a FrobeniusAlgebra,
    cases: usize,
    failure: Option<Counterexample>,
}

impl<'a> Checker<'a> {
    pub(crate) fn new(alg: &'a FrobeniusAlgebra) -> Self {
        Checker {
            alg,
            cases: 0,
            failure: None,
        }
    }

    pub(crate) fn case<T: PartialEq>(
        &mut self,
        indices: &[usize],
        lhs: &T,
        rhs: &T,
        render: impl Fn(&T) -> String,
    ) {
        self.cases += 1;
        if self.failure.is_none() && lhs != rhs {
            self.failure = Some(Counterexample {
                indices: indices.to_vec(),
                inputs: indices
                    .iter()
                    .map(|&i| self.alg.labels()[i].clone())
                    .collect(),
                lhs: render(lhs),
                rhs: render(rhs),
            });
        }
    }

    pub(crate) fn finish(self, law: &str) -> LawReport {
        LawReport::new(law, self.cases, self.failure)
    }
}

/// `[e_i, e_j] = −[e_j, e_i]` on all `n²` pairs.
pub fn check_antisymmetry(ctx: &BranchContext) -> LawReport {
    let alg = ctx.algebra();
    let n = alg.rank();
    let mut chk = Checker::new(alg);
    for i in 0..n {
        for j in 0..n {
            let lhs = ctx.basis_bracket(i, j).clone();
            let rhs = -ctx.basis_bracket(j, i);
            chk.case(&[i, j], &lhs, &rhs, |e| alg.render(e));
        }
    }
    chk.finish("antisymmetry")
}

/// `[x,[y,z]] + [z,[x,y]] + [y,[z,x]] = 0` on all `n³` triples.
pub fn check_jacobi(ctx: &BranchContext) -> LawReport {
    let alg = ctx.algebra();
    let n = alg.rank();
    let zero = alg.zero();
    let mut chk = Checker::new(alg);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t1 = ctx.bracket(&alg.basis(x), ctx.basis_bracket(y, z));
                let t2 = ctx.bracket(&alg.basis(z), ctx.basis_bracket(x, y));
                let t3 = ctx.bracket(&alg.basis(y), ctx.basis_bracket(z, x));
                let sum = &(&t1 + &t2) + &t3;
                chk.case(&[x, y, z], &sum, &zero, |e| alg.render(e));
            }
        }
    }
    chk.finish("jacobi")
}

/// `Σ [u, y_i] ⊗ e_i = Σ y_i ⊗ [e_i, u]` on all basis `u`.
pub fn check_cocomul_two_sided(ctx: &BranchContext) -> LawReport {
    let alg = ctx.algebra();
    let mut chk = Checker::new(alg);
    for u in 0..alg.rank() {
        let b = alg.basis(u);
        chk.case(&[u], &ctx.cocomul(&b), &ctx.cocomul_right(&b), |t| {
            alg.render_tensor(t)
        });
    }
    chk.finish("cocomul_two_sided")
}

/// `θ(w, u, v) = ε(w · [u, v])` on all `n³` triples.
pub fn check_theta_trace(ctx: &BranchContext) -> LawReport {
    let alg = ctx.algebra();
    let n = alg.rank();
    let mut chk = Checker::new(alg);
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                let lhs = ctx.theta().get(w, u, v);
                let rhs = alg.counit(&alg.mul(&alg.basis(w), ctx.basis_bracket(u, v)));
                chk.case(&[w, u, v], &lhs, &rhs, MultiPoly::to_string);
            }
        }
    }
    chk.finish("theta_trace")
}

/// `x = Σ_i y_i ε(e_i x)` on all basis `x`.
pub fn check_delta_one_resolution(alg: &FrobeniusAlgebra) -> LawReport {
    let mut chk = Checker::new(alg);
    for x in 0..alg.rank() {
        let bx = alg.basis(x);
        let mut acc = alg.zero();
        for (i, y) in alg.dual_basis().iter().enumerate() {
            let c = alg.counit(&alg.mul(&alg.basis(i), &bx));
            if !c.is_zero() {
                acc = &acc + &y.scale(&c);
            }
        }
        chk.case(&[x], &bx, &acc, |e| alg.render(e));
    }
    chk.finish("delta_one_resolution")
}

fn compare_maps(law: &str, alg: &FrobeniusAlgebra, lhs: &LinearMap, rhs: &LinearMap) -> LawReport {
    let mut chk = Checker::new(alg);
    let g = alg.generators();
    let n = alg.rank();
    let cols = lhs.matrix().cols();
    for c in 0..cols {
        let tuple = index_tuple(c, n, lhs.inputs());
        let l = TensorElement::from_flat(g, n, lhs.outputs(), &lhs.matrix().column(c));
        let r = TensorElement::from_flat(g, n, rhs.outputs(), &rhs.matrix().column(c));
        chk.case(&tuple, &l, &r, |t| alg.render_tensor(t));
    }
    chk.finish(law)
}

/// Matrices shared by the skein identities.
struct SkeinMaps {
    bracket: LinearMap,
    id1: LinearMap,
    id2: LinearMap,
    tau: LinearMap,
    /// `x ⊗ y ↦ ε(xy) Δ(1)`.
    e: LinearMap,
}

impl SkeinMaps {
    fn new(ctx: &BranchContext) -> Self {
        let alg = ctx.algebra();
        let delta_one = alg.unit_map().then(&alg.comul_map());
        SkeinMaps {
            bracket: ctx.as_linear_map(MapKind::Bracket),
            id1: alg.identity_map(1),
            id2: alg.identity_map(2),
            tau: alg.swap_map(),
            e: alg.mul_map().then(&alg.counit_map()).then(&delta_one),
        }
    }

    /// `F = (m ⊗ id)(id ⊗ Δ)`.
    fn f(&self, delta: &LinearMap) -> LinearMap {
        self.id1.tensor(delta).then(&self.bracket.tensor(&self.id1))
    }
}

/// The web skein identities for both leg conventions of the branch
/// co-operation:
///
/// 1. `F = Δ(1)(εμ) − τ`
/// 2. `F² = id + Δ(1)(εμ)`
/// 3. `m Δ = 2 id`
///
/// plus the pointwise kernel `[e_i, Δ(e_j)₁] ⊗ Δ(e_j)₂ = e_j ⊗ e_i + ε(e_i e_j) Δ(1)`
/// under the unswapped convention, and the same kernel with the opposite
/// sign on the `Δ(1)` term. Reports for the unswapped convention are
/// informational.
pub fn check_skein_identities(ctx: &BranchContext) -> Vec<LawReport> {
    let alg = ctx.algebra();
    let maps = SkeinMaps::new(ctx);
    let two = MultiPoly::constant(alg.generators(), 2);
    let mut out = Vec::new();
    for (kind, variant, informational) in [
        (MapKind::CocomulSkein, "cocomul_skein", false),
        (MapKind::Cocomul, "cocomul", true),
    ] {
        let delta = ctx.as_linear_map(kind);
        let f = maps.f(&delta);
        let reports = [
            compare_maps("skein_f", alg, &f, &maps.e.sub(&maps.tau)),
            compare_maps("skein_f_squared", alg, &f.then(&f), &maps.id2.add(&maps.e)),
            compare_maps(
                "skein_m_delta",
                alg,
                &delta.then(&maps.bracket),
                &maps.id1.scale(&two),
            ),
        ];
        for r in reports {
            let r = r.with_variant(variant);
            out.push(if informational { r.informational() } else { r });
        }
    }
    let delta = ctx.as_linear_map(MapKind::Cocomul);
    let f = maps.f(&delta);
    out.push(
        compare_maps("skein_pointwise", alg, &f, &maps.tau.add(&maps.e))
            .with_variant("cocomul")
            .informational(),
    );
    out.push(
        compare_maps(
            "skein_pointwise_opposite_sign",
            alg,
            &f,
            &maps.tau.sub(&maps.e),
        )
        .with_variant("cocomul")
        .informational(),
    );
    out
}

/// Selectable law groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawKind {
    Antisymmetry,
    Jacobi,
    TwoSided,
    Skein,
    ThetaTrace,
    Resolution,
}

impl LawKind {
    pub const ALL: [LawKind; 6] = [
        LawKind::Antisymmetry,
        LawKind::Jacobi,
        LawKind::TwoSided,
        LawKind::Skein,
        LawKind::ThetaTrace,
        LawKind::Resolution,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "antisym" | "antisymmetry" => LawKind::Antisymmetry,
            "jacobi" => LawKind::Jacobi,
            "twosided" | "two_sided" | "cocomul" => LawKind::TwoSided,
            "skein" => LawKind::Skein,
            "trace" | "theta_trace" => LawKind::ThetaTrace,
            "resolution" | "delta_one" => LawKind::Resolution,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            LawKind::Antisymmetry => "antisym",
            LawKind::Jacobi => "jacobi",
            LawKind::TwoSided => "twosided",
            LawKind::Skein => "skein",
            LawKind::ThetaTrace => "trace",
            LawKind::Resolution => "resolution",
        }
    }
}

/// Runs the selected checks in the given order.
pub fn run(ctx: &BranchContext, laws: &[LawKind]) -> Vec<LawReport> {
    let mut out = Vec::new();
    for law in laws {
        match law {
            LawKind::Antisymmetry => out.push(check_antisymmetry(ctx)),
            LawKind::Jacobi => out.push(check_jacobi(ctx)),
            LawKind::TwoSided => out.push(check_cocomul_two_sided(ctx)),
            LawKind::Skein => out.extend(check_skein_identities(ctx)),
            LawKind::ThetaTrace => out.push(check_theta_trace(ctx)),
            LawKind::Resolution => out.push(check_delta_one_resolution(ctx.algebra())),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Generators;
    use crate::thetafoam::ThetaTable;

    fn mv_ctx() -> BranchContext {
        BranchContext::new(FrobeniusAlgebra::mv(), &ThetaTable::mv()).unwrap()
    }

    fn lie_ctx(n: usize) -> BranchContext {
        BranchContext::new(
            FrobeniusAlgebra::truncated(n).unwrap(),
            &ThetaTable::lie(n).unwrap(),
        )
        .unwrap()
    }

    fn diagonal_breaker() -> BranchContext {
        let z = Generators::integers();
        let t = ThetaTable::from_entries(&z, 2, [((0, 0, 1), MultiPoly::one(&z))]).unwrap();
        BranchContext::new(FrobeniusAlgebra::truncated(2).unwrap(), &t).unwrap()
    }

    #[test]
    fn antisymmetry_reports() {
        let r = check_antisymmetry(&mv_ctx());
        assert!(r.passed);
        assert_eq!(r.cases, 9);
        let r = check_antisymmetry(&lie_ctx(5));
        assert!(r.passed);
        assert_eq!(r.cases, 25);
        let r = check_antisymmetry(&diagonal_breaker());
        assert!(!r.passed);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.indices, [0, 0]);
        assert_eq!(cx.inputs, ["1", "1"]);
        assert_eq!(cx.lhs, "1");
        assert_eq!(cx.rhs, "-1");
    }

    #[test]
    fn mv_nested_brackets() {
        let ctx = mv_ctx();
        let alg = ctx.algebra();
        let r = |e| alg.render(&e);
        assert_eq!(r(ctx.bracket(&alg.basis(0), ctx.basis_bracket(1, 2))), "-X");
        assert_eq!(r(ctx.bracket(&alg.basis(1), ctx.basis_bracket(2, 0))), "a");
        assert_eq!(
            r(ctx.bracket(&alg.basis(2), ctx.basis_bracket(0, 1))),
            "X - a"
        );
    }

    #[test]
    fn jacobi_reports() {
        let r = check_jacobi(&mv_ctx());
        assert!(r.passed);
        assert_eq!(r.cases, 27);
        for n in [3, 5, 7, 9] {
            let r = check_jacobi(&lie_ctx(n));
            assert!(r.passed, "N = {}: {:?}", n, r.counterexample);
            assert_eq!(r.cases, n * n * n);
        }
        let zero = ThetaTable::zero(&Generators::integers(), 3);
        let ctx = BranchContext::new(FrobeniusAlgebra::mv(), &zero).unwrap();
        assert!(check_jacobi(&ctx).passed);
    }

    #[test]
    fn two_sidedness_and_trace() {
        for ctx in [mv_ctx(), lie_ctx(3), lie_ctx(5), diagonal_breaker()] {
            // Any cyclically closed table gives a two-sided co-operation.
            assert!(check_cocomul_two_sided(&ctx).passed);
            assert!(check_theta_trace(&ctx).passed);
        }
        assert_eq!(check_theta_trace(&lie_ctx(5)).cases, 125);
        let zero = ThetaTable::zero(&Generators::integers(), 3);
        let ctx = BranchContext::new(FrobeniusAlgebra::mv(), &zero).unwrap();
        assert!(check_theta_trace(&ctx).passed);
    }

    #[test]
    fn resolution_reports() {
        let r = check_delta_one_resolution(&FrobeniusAlgebra::mv());
        assert!(r.passed);
        assert_eq!(r.cases, 3);
        for n in 1..=9 {
            assert!(check_delta_one_resolution(&FrobeniusAlgebra::truncated(n).unwrap()).passed);
        }
    }

    #[test]
    fn skein_reports_for_mv() {
        let reports = check_skein_identities(&mv_ctx());
        let find = |law: &str, variant: &str| {
            reports
                .iter()
                .find(|r| r.law == law && r.variant.as_deref() == Some(variant))
                .unwrap()
        };
        for law in ["skein_f", "skein_f_squared", "skein_m_delta"] {
            let r = find(law, "cocomul_skein");
            assert!(r.passed, "{}: {:?}", law, r.counterexample);
            assert!(!r.informational);
        }
        assert_eq!(find("skein_f", "cocomul_skein").cases, 9);
        assert_eq!(find("skein_m_delta", "cocomul_skein").cases, 3);
        // unswapped legs: F flips sign, so F² still matches
        assert!(!find("skein_f", "cocomul").passed);
        assert!(find("skein_f_squared", "cocomul").passed);
        let md = find("skein_m_delta", "cocomul");
        assert!(!md.passed);
        assert_eq!(md.counterexample.as_ref().unwrap().lhs, "-2");
        assert!(find("skein_pointwise_opposite_sign", "cocomul").passed);
        assert!(reports.iter().all(|r| !r.is_blocking_failure()));
    }

    #[test]
    fn run_selects_in_order() {
        let reports = run(&mv_ctx(), &[LawKind::Jacobi, LawKind::Antisymmetry]);
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].law, "jacobi");
        assert_eq!(LawKind::from_name("antisym"), Some(LawKind::Antisymmetry));
        assert_eq!(LawKind::from_name("nope"), None);
        for k in LawKind::ALL {
            assert_eq!(LawKind::from_name(k.name()), Some(k));
        }
    }
}
