//! A small planar string-diagram language over the Frobenius and branch
//! operations.
//!
//! ```text
//! expr   = term { ";" term }          composition, bottom to top
//! term   = factor { "*" factor }      tensor, left to right
//! factor = generator | "label" "(" elem ")" | "(" expr ")"
//! ```
//!
//! Generators: `id` (1→1), `swap` (2→2), `mul` (2→1), `comul` (1→2),
//! `unit` (0→1), `counit` (1→0), `bmul` (2→1), `bcomul` (1→2),
//! `bcomul_skein` (1→2). `label(u)` is multiplication by the element `u`,
//! written in polynomial syntax over the algebra's basis symbols and
//! coefficient generators.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::branchops::{BranchContext, MapKind};
use crate::coeffring::MultiPoly;
use crate::lexer::{Cursor, ParseError, Pos, TokenKind};
use crate::linmap::LinearMap;
use crate::polyexpr::{parse_sum, PolyExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Id,
    Swap,
    Mul,
    Comul,
    Unit,
    Counit,
    Bmul,
    Bcomul,
    BcomulSkein,
    Label(PolyExpr),
}

impl Generator {
    pub const NAMES: [&'static str; 10] = [
        "id",
        "swap",
        "mul",
        "comul",
        "unit",
        "counit",
        "bmul",
        "bcomul",
        "bcomul_skein",
        "label",
    ];

    /// Looks up a payload-free generator.
    pub fn from_name(name: &str) -> Option<Generator> {
        Some(match name {
            "id" => Generator::Id,
            "swap" => Generator::Swap,
            "mul" => Generator::Mul,
            "comul" => Generator::Comul,
            "unit" => Generator::Unit,
            "counit" => Generator::Counit,
            "bmul" => Generator::Bmul,
            "bcomul" => Generator::Bcomul,
            "bcomul_skein" => Generator::BcomulSkein,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Id => "id",
            Generator::Swap => "swap",
            Generator::Mul => "mul",
            Generator::Comul => "comul",
            Generator::Unit => "unit",
            Generator::Counit => "counit",
            Generator::Bmul => "bmul",
            Generator::Bcomul => "bcomul",
            Generator::BcomulSkein => "bcomul_skein",
            Generator::Label(_) => "label",
        }
    }

    /// `(inputs, outputs)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Generator::Id | Generator::Label(_) => (1, 1),
            Generator::Swap => (2, 2),
            Generator::Mul | Generator::Bmul => (2, 1),
            Generator::Comul | Generator::Bcomul | Generator::BcomulSkein => (1, 2),
            Generator::Unit => (0, 1),
            Generator::Counit => (1, 0),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Label(e) => write!(f, "label({})", e),
            g => f.write_str(g.name()),
        }
    }
}

/// Diagram AST. Positions locate the first token of each node and are
/// ignored by equality.
#[derive(Clone, Debug)]
pub enum DiagramExpr {
    Generator(Generator, Pos),
    Tensor(Vec<DiagramExpr>, Pos),
    /// Children listed bottom to top: the first child is applied first.
    Compose(Vec<DiagramExpr>, Pos),
}

impl PartialEq for DiagramExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (DiagramExpr::Generator(a, _), DiagramExpr::Generator(b, _)) => a == b,
            (DiagramExpr::Tensor(a, _), DiagramExpr::Tensor(b, _)) => a == b,
            (DiagramExpr::Compose(a, _), DiagramExpr::Compose(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Eq for DiagramExpr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoamError {
    Parse(ParseError),
    /// A composition step whose input arity does not match the arity
    /// produced below it.
    Arity {
        pos: Pos,
        produced: usize,
        expected: usize,
    },
    NotClosed {
        inputs: usize,
        outputs: usize,
    },
    /// A label element that does not evaluate in the algebra.
    Label(ParseError),
}

impl FoamError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            FoamError::Parse(e) | FoamError::Label(e) => Some(e.pos),
            FoamError::Arity { pos, .. } => Some(*pos),
            FoamError::NotClosed { .. } => None,
        }
    }
}

impl fmt::Display for FoamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoamError::Parse(e) => write!(f, "{}", e),
            FoamError::Arity {
                pos,
                produced,
                expected,
            } => write!(
                f,
                "arity error at {}: takes {} input(s) but {} are produced below ({} ≠ {})",
                pos, expected, produced, produced, expected
            ),
            FoamError::NotClosed { inputs, outputs } => write!(
                f,
                "diagram is not closed: arity ({}, {}) instead of (0, 0)",
                inputs, outputs
            ),
            FoamError::Label(e) => write!(f, "label: {}", e),
        }
    }
}

impl core::error::Error for FoamError {}

impl From<ParseError> for FoamError {
    fn from(e: ParseError) -> Self {
        FoamError::Parse(e)
    }
}

pub fn parse(src: &str) -> Result<DiagramExpr, ParseError> {
    DiagramExpr::parse(src)
}

pub fn typecheck(e: &DiagramExpr) -> Result<(usize, usize), FoamError> {
    e.arity()
}

pub fn compile(e: &DiagramExpr, ctx: &BranchContext) -> Result<LinearMap, FoamError> {
    e.compile(ctx)
}

pub fn eval_closed(e: &DiagramExpr, ctx: &BranchContext) -> Result<MultiPoly, FoamError> {
    e.eval_closed(ctx)
}

const FACTOR_START: [&str; 3] = ["generator name", "`label`", "`(`"];

fn parse_expr(cur: &mut Cursor) -> Result<DiagramExpr, ParseError> {
    let pos = cur.peek().pos;
    let mut parts = alloc::vec![parse_term(cur)?];
    while cur.eat(&TokenKind::Semi) {
        parts.push(parse_term(cur)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        DiagramExpr::Compose(parts, pos)
    })
}

fn parse_term(cur: &mut Cursor) -> Result<DiagramExpr, ParseError> {
    let pos = cur.peek().pos;
    let mut parts = alloc::vec![parse_factor(cur)?];
    while cur.eat(&TokenKind::Star) {
        parts.push(parse_factor(cur)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        DiagramExpr::Tensor(parts, pos)
    })
}

fn parse_factor(cur: &mut Cursor) -> Result<DiagramExpr, ParseError> {
    let t = cur.peek().clone();
    match &t.kind {
        TokenKind::LParen => {
            cur.bump();
            let e = parse_expr(cur)?;
            cur.expect(TokenKind::RParen, "`)`")?;
            Ok(e)
        }
        TokenKind::Ident(name) if name == "label" => {
            cur.bump();
            cur.expect(TokenKind::LParen, "`(`")?;
            let elem = parse_sum(cur)?;
            cur.expect(TokenKind::RParen, "`)`")?;
            Ok(DiagramExpr::Generator(Generator::Label(elem), t.pos))
        }
        TokenKind::Ident(name) => match Generator::from_name(name) {
            Some(g) => {
                cur.bump();
                Ok(DiagramExpr::Generator(g, t.pos))
            }
            None => Err(ParseError::expecting(
                t.pos,
                alloc::format!("unknown generator `{}`", name),
                &Generator::NAMES,
            )),
        },
        other => Err(ParseError::expecting(
            t.pos,
            alloc::format!("expected a diagram, found {}", other.describe()),
            &FACTOR_START,
        )),
    }
}

impl DiagramExpr {
    pub fn parse(src: &str) -> Result<DiagramExpr, ParseError> {
        let mut cur = Cursor::new(src)?;
        let e = parse_expr(&mut cur)?;
        cur.expect_eof()?;
        Ok(e)
    }

    pub fn generator(g: Generator) -> Self {
        DiagramExpr::Generator(g, Pos::new(1, 1))
    }

    pub fn tensor(parts: Vec<DiagramExpr>) -> Self {
        DiagramExpr::Tensor(parts, Pos::new(1, 1))
    }

    pub fn compose(parts: Vec<DiagramExpr>) -> Self {
        DiagramExpr::Compose(parts, Pos::new(1, 1))
    }

    pub fn pos(&self) -> Pos {
        match self {
            DiagramExpr::Generator(_, p)
            | DiagramExpr::Tensor(_, p)
            | DiagramExpr::Compose(_, p) => *p,
        }
    }

    /// `(inputs, outputs)` of a well-typed expression.
    pub fn arity(&self) -> Result<(usize, usize), FoamError> {
        match self {
            DiagramExpr::Generator(g, _) => Ok(g.arity()),
            DiagramExpr::Tensor(parts, _) => parts.iter().try_fold((0, 0), |(i, o), p| {
                let (pi, po) = p.arity()?;
                Ok((i + pi, o + po))
            }),
            DiagramExpr::Compose(parts, _) => {
                let (inputs, mut outputs) = parts[0].arity()?;
                for p in &parts[1..] {
                    let (pi, po) = p.arity()?;
                    if pi != outputs {
                        return Err(FoamError::Arity {
                            pos: p.pos(),
                            produced: outputs,
                            expected: pi,
                        });
                    }
                    outputs = po;
                }
                Ok((inputs, outputs))
            }
        }
    }

    /// Exact matrix of the diagram in the given context.
    pub fn compile(&self, ctx: &BranchContext) -> Result<LinearMap, FoamError> {
        self.arity()?;
        self.compile_checked(ctx)
    }

    fn compile_checked(&self, ctx: &BranchContext) -> Result<LinearMap, FoamError> {
        match self {
            DiagramExpr::Generator(g, pos) => {
                let kind = match g {
                    Generator::Id => MapKind::Identity,
                    Generator::Swap => MapKind::Swap,
                    Generator::Mul => MapKind::Mul,
                    Generator::Comul => MapKind::Comul,
                    Generator::Unit => MapKind::Unit,
                    Generator::Counit => MapKind::Counit,
                    Generator::Bmul => MapKind::Bracket,
                    Generator::Bcomul => MapKind::Cocomul,
                    Generator::BcomulSkein => MapKind::CocomulSkein,
                    Generator::Label(e) => {
                        let alg = ctx.algebra();
                        let u = alg.eval_element(e, *pos).map_err(FoamError::Label)?;
                        return Ok(alg.multiplication_by(&u));
                    }
                };
                Ok(ctx.as_linear_map(kind))
            }
            DiagramExpr::Tensor(parts, _) => {
                let mut acc = parts[0].compile_checked(ctx)?;
                for p in &parts[1..] {
                    acc = acc.tensor(&p.compile_checked(ctx)?);
                }
                Ok(acc)
            }
            DiagramExpr::Compose(parts, _) => {
                let mut acc = parts[0].compile_checked(ctx)?;
                for p in &parts[1..] {
                    acc = acc.then(&p.compile_checked(ctx)?);
                }
                Ok(acc)
            }
        }
    }

    /// Value of a closed `(0, 0)` diagram.
    pub fn eval_closed(&self, ctx: &BranchContext) -> Result<MultiPoly, FoamError> {
        let (inputs, outputs) = self.arity()?;
        if (inputs, outputs) != (0, 0) {
            return Err(FoamError::NotClosed { inputs, outputs });
        }
        let m = self.compile_checked(ctx)?;
        Ok(m.scalar().expect("closed diagram").clone())
    }

    /// Same as `Display`.
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DiagramExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (parts, sep, nested) = match self {
            DiagramExpr::Generator(g, _) => return write!(f, "{}", g),
            DiagramExpr::Tensor(parts, _) => (parts, " * ", true),
            DiagramExpr::Compose(parts, _) => (parts, " ; ", false),
        };
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            let wrap = match p {
                DiagramExpr::Generator(..) => false,
                DiagramExpr::Tensor(..) => nested,
                DiagramExpr::Compose(..) => true,
            };
            if wrap {
                write!(f, "({})", p)?;
            } else {
                write!(f, "{}", p)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobalg::FrobeniusAlgebra;
    use crate::matrix::PolyMatrix;
    use crate::thetafoam::ThetaTable;
    use proptest::prelude::*;

    fn mv_ctx() -> BranchContext {
        BranchContext::new(FrobeniusAlgebra::mv(), &ThetaTable::mv()).unwrap()
    }

    fn g(gen: Generator) -> DiagramExpr {
        DiagramExpr::generator(gen)
    }

    #[test]
    fn parses_compositions_and_tensors() {
        let e = parse("unit ; comul").unwrap();
        assert_eq!(
            e,
            DiagramExpr::compose(alloc::vec![g(Generator::Unit), g(Generator::Comul)])
        );
        let e = parse("(unit * unit) ; mul ; counit").unwrap();
        assert_eq!(
            e,
            DiagramExpr::compose(alloc::vec![
                DiagramExpr::tensor(alloc::vec![g(Generator::Unit), g(Generator::Unit)]),
                g(Generator::Mul),
                g(Generator::Counit),
            ])
        );
        // tensor binds tighter than composition
        assert_eq!(
            parse("id * id ; mul").unwrap(),
            parse("(id * id) ; mul").unwrap()
        );
        let l = parse("label(a*X^2 - 1)").unwrap();
        assert_eq!(
            l,
            g(Generator::Label(PolyExpr::parse("a*X^2 - 1").unwrap()))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("unit ; ; comul", Pos::new(1, 8)),
            ("", Pos::new(1, 1)),
            ("mul ;", Pos::new(1, 6)),
            ("(unit", Pos::new(1, 6)),
            ("unit )", Pos::new(1, 6)),
            ("foo", Pos::new(1, 1)),
            ("id *\n  frob", Pos::new(2, 3)),
            ("label X", Pos::new(1, 7)),
            ("label()", Pos::new(1, 7)),
            ("id * * id", Pos::new(1, 6)),
            ("id $ id", Pos::new(1, 4)),
        ];
        for (src, pos) in cases {
            let err = parse(src).unwrap_err();
            assert_eq!(err.pos, pos, "{:?}: {}", src, err);
        }
        assert!(parse("foo")
            .unwrap_err()
            .message
            .contains("unknown generator"));
    }

    #[test]
    fn typechecks() {
        assert_eq!(typecheck(&parse("unit ; comul").unwrap()), Ok((0, 2)));
        assert_eq!(
            typecheck(&parse("(unit * unit) ; mul ; counit").unwrap()),
            Ok((0, 0))
        );
        assert_eq!(typecheck(&parse("id * swap * unit").unwrap()), Ok((3, 4)));
        let err = typecheck(&parse("comul ; comul").unwrap()).unwrap_err();
        assert_eq!(
            err,
            FoamError::Arity {
                pos: Pos::new(1, 9),
                produced: 2,
                expected: 1
            }
        );
        assert!(err.to_string().contains("2 ≠ 1"));
        // the error points at the nested offending child
        let err = typecheck(&parse("unit ; (id ; mul)").unwrap()).unwrap_err();
        assert_eq!(err.pos(), Some(Pos::new(1, 14)));
    }

    #[test]
    fn compiles_generators() {
        let ctx = mv_ctx();
        let alg = ctx.algebra();
        assert_eq!(
            compile(&parse("swap").unwrap(), &ctx).unwrap(),
            alg.swap_map()
        );
        assert_eq!(
            compile(&parse("id * id").unwrap(), &ctx).unwrap(),
            alg.identity_map(2)
        );
        assert_eq!(
            compile(&parse("bmul").unwrap(), &ctx).unwrap(),
            ctx.as_linear_map(MapKind::Bracket)
        );
        let x = compile(&parse("label(X)").unwrap(), &ctx).unwrap();
        assert_eq!(
            x.apply_element(&alg.basis(2)),
            alg.parse_element("a*X^2 + b*X + c").unwrap()
        );
        let handle = compile(&parse("comul ; mul").unwrap(), &ctx).unwrap();
        let v = handle.apply_element(&alg.one());
        assert_eq!(alg.counit(&v), MultiPoly::constant(alg.generators(), 3));
        let err = compile(&parse("label(Y)").unwrap(), &ctx).unwrap_err();
        assert!(matches!(err, FoamError::Label(_)));
    }

    #[test]
    fn closed_evaluation() {
        let ctx = mv_ctx();
        let alg = ctx.algebra();
        let v = eval_closed(
            &parse("((unit;label(1)) * (unit;label(X)) * (unit;label(X^2))) ; (id * bmul) ; mul ; counit").unwrap(),
            &ctx,
        )
        .unwrap();
        assert!(v.is_one());
        let v = eval_closed(
            &parse("((unit;label(X)) * (unit;label(X^2))) ; mul ; counit").unwrap(),
            &ctx,
        )
        .unwrap();
        assert_eq!(v, alg.poly("-a").unwrap());
        assert!(eval_closed(&parse("unit ; counit").unwrap(), &ctx)
            .unwrap()
            .is_zero());
        assert_eq!(
            eval_closed(&parse("unit ; comul").unwrap(), &ctx).unwrap_err(),
            FoamError::NotClosed {
                inputs: 0,
                outputs: 2
            }
        );
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "unit ; comul",
            "(unit * unit) ; mul ; counit",
            "id * (swap ; swap) * id",
            "(id * id) * id",
            "((unit ; comul) ; mul)",
            "label(-(a + b)^2 * X)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{} -> {}", src, printed);
        }
        assert_eq!(
            parse("(unit*unit);mul").unwrap().to_string(),
            "unit * unit ; mul"
        );
    }

    fn leaf() -> impl Strategy<Value = DiagramExpr> {
        prop_oneof![
            Just(g(Generator::Id)),
            Just(g(Generator::Swap)),
            Just(g(Generator::Mul)),
            Just(g(Generator::Comul)),
            Just(g(Generator::Unit)),
            Just(g(Generator::Counit)),
            Just(g(Generator::Bmul)),
            Just(g(Generator::Bcomul)),
            Just(g(Generator::BcomulSkein)),
            Just(g(Generator::Label(PolyExpr::parse("X - a").unwrap()))),
        ]
    }

    fn any_expr() -> impl Strategy<Value = DiagramExpr> {
        leaf().prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(DiagramExpr::tensor),
                proptest::collection::vec(inner, 2..4).prop_map(DiagramExpr::compose),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_is_identity(e in any_expr()) {
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), printed);
        }

        #[test]
        fn tensor_arities_add(a in leaf(), b in leaf()) {
            let (ai, ao) = a.arity().unwrap();
            let (bi, bo) = b.arity().unwrap();
            prop_assert_eq!(DiagramExpr::tensor(alloc::vec![a, b]).arity().unwrap(), (ai + bi, ao + bo));
        }
    }

    #[test]
    fn compile_is_monoidal_on_leaves() {
        let ctx = mv_ctx();
        let gens = [
            Generator::Id,
            Generator::Swap,
            Generator::Mul,
            Generator::Comul,
            Generator::Bmul,
        ];
        for a in &gens {
            for b in &gens {
                let t = DiagramExpr::tensor(alloc::vec![g(a.clone()), g(b.clone())]);
                let ma = g(a.clone()).compile(&ctx).unwrap();
                let mb = g(b.clone()).compile(&ctx).unwrap();
                let kron: PolyMatrix = ma.matrix().kron(mb.matrix());
                assert_eq!(t.compile(&ctx).unwrap().matrix(), &kron);
            }
        }
    }
}
