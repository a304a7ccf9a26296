//! `g`-expansions, Newton polygons modulo `N`, residual polynomials and the
//! `N`-regularity certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Error;
use crate::extpoly::{certify_squarefree, sfd1, ExtPolynomial, ExtRing};
use crate::intpoly::IntPolynomial;
use crate::modint::{Hook, HookOutcome, ModulusContext, Ordinate};
use crate::modpoly::{gcd0, ord_mod, ModPolynomial, SquarefreeDecomposition};
use crate::poly::{CoeffRing, Poly};

/// A monic integer polynomial of degree `n > 1`, assumed irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberFieldInput {
    f: IntPolynomial,
}

impl NumberFieldInput {
    pub fn new(f: IntPolynomial) -> Result<Self, Error> {
        match f.degree() {
            Some(n) if n >= 2 => {}
            _ => return Err(Error::InvalidInput(format!("degree must be at least 2, got {}", f.to_text()))),
        }
        if !f.is_monic() {
            return Err(Error::InvalidInput(format!("polynomial must be monic: {}", f.to_text())));
        }
        Ok(NumberFieldInput { f })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }
}

/// `f = sum a_j g^j` over `Z[x]` with quotients `q_j = f div g^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GExpansion {
    /// Monic integer lift of `g` with coefficients in `[0, N)`.
    pub g: IntPolynomial,
    pub a: Vec<IntPolynomial>,
    /// `q[j - 1]` is `q_j`, for `j = 1..=r`.
    pub q: Vec<IntPolynomial>,
}

impl GExpansion {
    pub fn len(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.a.len() <= 1
    }

    /// `q_j`, `1 <= j <= r`.
    pub fn quotient(&self, j: usize) -> &IntPolynomial {
        &self.q[j - 1]
    }
}

/// Expansion of `f` in powers of the integer lift of `g` by repeated exact division.
pub fn g_expansion(f: &NumberFieldInput, g: &ModPolynomial) -> GExpansion {
    let g_int = IntPolynomial::lift(g);
    assert!(g_int.is_monic() && g_int.degree() >= Some(1), "g_expansion: g must be monic of positive degree");
    let dg = g_int.degree().unwrap();
    let mut a = Vec::new();
    let mut q = Vec::new();
    let mut cur = f.poly().clone();
    while cur.degree().is_some_and(|d| d >= dg) {
        let (quo, rem) = cur.div_rem_monic(&g_int);
        a.push(rem);
        q.push(quo.clone());
        cur = quo;
    }
    a.push(cur);
    GExpansion { g: g_int, a, q }
}

/// `v_N` of an integer polynomial: the least valuation over its coefficients.
pub fn val_n_poly(ctx: &ModulusContext, a: &IntPolynomial) -> HookOutcome<Ordinate> {
    let mut best = Ordinate::Infinity;
    for c in a.coeffs() {
        best = best.min(ctx.valuation(c)?);
    }
    Ok(best)
}

/// A side of slope `-h/e` starting at `(s, u_s)` and spanning `length` abscissae.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub s: usize,
    pub u_s: u32,
    pub length: usize,
    pub h: u32,
    pub e: u32,
}

impl Side {
    /// `d(S) = length / e`.
    pub fn degree(&self) -> usize {
        self.length / self.e as usize
    }

    pub fn slope(&self) -> Rational64 {
        Rational64::new(-(self.h as i64), self.e as i64)
    }

    pub fn is_integral(&self) -> bool {
        self.e == 1
    }

    pub fn end(&self) -> (usize, u32) {
        (self.s + self.length, self.u_s - self.h * self.degree() as u32)
    }

    /// Ordinate of the side at abscissa `i`, `s <= i <= s + length`.
    pub fn ordinate_at(&self, i: usize) -> Rational64 {
        let dx = (i - self.s) as i64;
        Rational64::from_integer(self.u_s as i64) - Rational64::new(self.h as i64 * dx, self.e as i64)
    }
}

/// The principal polygon: the sides of negative slope of the lower hull.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPolygon {
    pub vertices: Vec<(usize, u32)>,
    pub sides: Vec<Side>,
    /// `y[j - 1]` is the ordinate at abscissa `j`, `j = 1..=length`.
    pub y: Vec<Rational64>,
}

impl PrincipalPolygon {
    pub fn length(&self) -> usize {
        self.y.len()
    }

    pub fn all_slopes_integral(&self) -> bool {
        self.sides.iter().all(Side::is_integral)
    }

    /// `floor(y_j)` for `j = 1..=length`.
    pub fn floors(&self) -> Vec<u32> {
        self.y.iter().map(|y| y.floor().to_integer() as u32).collect()
    }

    pub fn is_one_sided(&self) -> bool {
        self.sides.len() == 1
    }

    /// `sum_j floor(y_j)`.
    pub fn floor_sum(&self) -> u64 {
        self.y.iter().map(|y| y.floor().to_integer() as u64).sum()
    }

    /// Polygon ordinate at an abscissa inside `[first vertex, last vertex]`.
    pub fn ordinate_at(&self, i: usize) -> Option<Rational64> {
        self.sides
            .iter()
            .find(|s| s.s <= i && i <= s.s + s.length)
            .map(|s| s.ordinate_at(i))
    }
}

/// Lower convex hull of `points` restricted to negative slopes, with the exact
/// ordinates `y_1..y_l`. Fails if the length differs from `expected_len`.
pub fn principal_polygon(points: &[(usize, Ordinate)], expected_len: usize) -> Result<PrincipalPolygon, Error> {
    let mut pts: Vec<(i64, i64)> = points
        .iter()
        .filter_map(|&(i, u)| u.finite().map(|u| (i as i64, u as i64)))
        .collect();
    pts.sort_unstable();
    pts.dedup_by_key(|p| p.0);
    if pts.first().map(|p| p.0) != Some(0) {
        return Err(Error::Inconsistency("principal polygon needs a finite ordinate at abscissa 0".into()));
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut vertices = vec![(hull[0].0 as usize, hull[0].1 as u32)];
    let mut sides = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if dy >= 0 {
            break;
        }
        let g = dx.gcd(&dy);
        sides.push(Side {
            s: w[0].0 as usize,
            u_s: w[0].1 as u32,
            length: dx as usize,
            h: (-dy / g) as u32,
            e: (dx / g) as u32,
        });
        vertices.push((w[1].0 as usize, w[1].1 as u32));
    }
    let length = vertices.last().unwrap().0;
    if length != expected_len {
        return Err(Error::Inconsistency(format!(
            "principal polygon has length {length}, expected ord = {expected_len}"
        )));
    }
    let mut poly = PrincipalPolygon { vertices, sides, y: Vec::new() };
    poly.y = (1..=length).map(|j| poly.ordinate_at(j).unwrap()).collect();
    Ok(poly)
}

/// `R_{g,lambda}(f)` over `A[x]/(g)` for one side.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualPolynomial {
    pub side: Side,
    pub poly: ExtPolynomial,
}

/// Points above the side and points with infinite ordinate contribute zero.
pub fn residual_polynomial(
    ring: &ExtRing,
    exp: &GExpansion,
    u: &[Ordinate],
    side: &Side,
) -> ResidualPolynomial {
    let ctx = ring.base();
    let nat = |k: u32| num_traits::pow(ctx.modulus().clone(), k as usize);
    let coeffs: Vec<ModPolynomial> = (0..=side.degree())
        .map(|k| {
            let i = side.s + k * side.e as usize;
            let on_side = side.u_s as i64 - (side.h as usize * k) as i64;
            match u[i] {
                Ordinate::Finite(ui) if ui as i64 == on_side => {
                    let unit = exp.a[i].div_exact_int(&nat(ui)).expect("v_N exactness");
                    ring.element(&unit.reduce(ctx))
                }
                _ => ring.zero(),
            }
        })
        .collect();
    let poly = Poly::new(ring.clone(), coeffs);
    assert_eq!(poly.degree(), Some(side.degree()), "residual polynomial degree");
    assert!(!poly.coeff(0).is_zero(), "residual polynomial divisible by y");
    ResidualPolynomial { side: *side, poly }
}

/// Everything computed for one squarefree factor `g_i`.
#[derive(Clone, Debug)]
pub struct FactorReport {
    pub g: ModPolynomial,
    /// `l_i = ord_g(f)`.
    pub ell: usize,
    pub expansion: GExpansion,
    pub u: Vec<Ordinate>,
    pub polygon: PrincipalPolygon,
    pub residuals: Vec<ResidualPolynomial>,
    pub all_slopes_integral: bool,
    pub regular: bool,
}

/// A residual polynomial certified non-squarefree.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub modulus: BigInt,
    pub g: ModPolynomial,
    pub side: Side,
    pub residual: ExtPolynomial,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub modulus: BigInt,
    pub factors: Vec<FactorReport>,
    pub regular: bool,
    pub obstruction: Option<Obstruction>,
}

impl RegularityReport {
    pub fn all_slopes_integral(&self) -> bool {
        self.factors.iter().all(|f| f.all_slopes_integral)
    }
}

type FactorOutcome = Result<HookOutcome<(FactorReport, Option<Obstruction>)>, Error>;

fn factor_report(f: &NumberFieldInput, fbar: &ModPolynomial, g: &ModPolynomial) -> FactorOutcome {
    let ctx = g.ring().clone();
    let ell = ord_mod(fbar, g) as usize;
    let exp = g_expansion(f, g);
    let mut u = Vec::with_capacity(exp.a.len());
    for a in &exp.a {
        match val_n_poly(&ctx, a) {
            Ok(v) => u.push(v),
            Err(h) => return Ok(Err(h)),
        }
    }
    let ring = ExtRing::new(g.clone());

    if u[0] == Ordinate::Infinity {
        // a_0 = 0: the lift of g divides f, which for irreducible f means f = g
        if f.poly() != &exp.g {
            return Err(Error::InvalidInput(format!(
                "f is divisible by {} and hence reducible",
                exp.g.to_text()
            )));
        }
        let polygon = PrincipalPolygon { vertices: vec![(1, 0)], sides: Vec::new(), y: vec![Rational64::zero()] };
        let rep = FactorReport {
            g: g.clone(),
            ell,
            expansion: exp,
            u,
            polygon,
            residuals: Vec::new(),
            all_slopes_integral: true,
            regular: true,
        };
        return Ok(Ok((rep, None)));
    }

    let points: Vec<(usize, Ordinate)> = u.iter().copied().enumerate().collect();
    let polygon = principal_polygon(&points, ell)?;

    for &(s, us) in &polygon.vertices {
        let unit = exp.a[s].div_exact_int(&num_traits::pow(ctx.modulus().clone(), us as usize)).unwrap();
        match gcd0(&unit.reduce(&ctx), g) {
            Ok(d) if d.is_one() => {}
            Ok(d) => return Ok(Err(Hook::FactorOfG(d))),
            Err(h) => return Ok(Err(h)),
        }
    }

    let mut residuals = Vec::with_capacity(polygon.sides.len());
    let mut obstruction = None;
    for side in &polygon.sides {
        let res = residual_polynomial(&ring, &exp, &u, side);
        match certify_squarefree(&res.poly) {
            Ok(true) => {}
            Ok(false) => {
                if obstruction.is_none() {
                    let monic = res.poly.make_monic().expect("already normalized once");
                    let exponents = sfd1(&monic).expect("already decomposed once").iter().map(|p| p.1).collect();
                    obstruction = Some(Obstruction {
                        modulus: ctx.modulus().clone(),
                        g: g.clone(),
                        side: *side,
                        residual: res.poly.clone(),
                        exponents,
                    });
                }
            }
            Err(h) => return Ok(Err(h)),
        }
        residuals.push(res);
    }
    let rep = FactorReport {
        g: g.clone(),
        ell,
        all_slopes_integral: polygon.all_slopes_integral(),
        regular: obstruction.is_none(),
        expansion: exp,
        u,
        polygon,
        residuals,
    };
    Ok(Ok((rep, obstruction)))
}

/// Runs the three regularity checks for every factor of `dec`.
///
/// The outer `Result` reports malformed input or internal inconsistencies; the
/// inner one carries the first hook met, scanning factors in order.
pub fn regularity_report(
    f: &NumberFieldInput,
    ctx: &ModulusContext,
    dec: &SquarefreeDecomposition,
) -> Result<HookOutcome<RegularityReport>, Error> {
    let fbar = f.poly().reduce(ctx);
    let outcomes: Vec<FactorOutcome> = dec.pairs.par_iter().map(|(g, _)| factor_report(f, &fbar, g)).collect();
    let mut factors = Vec::with_capacity(outcomes.len());
    let mut obstruction = None;
    for (o, (_, l)) in outcomes.into_iter().zip(&dec.pairs) {
        match o? {
            Err(h) => return Ok(Err(h)),
            Ok((rep, obs)) => {
                if rep.ell != *l as usize {
                    return Err(Error::Inconsistency(format!(
                        "ord of factor {:?} is {}, decomposition says {l}",
                        rep.g, rep.ell
                    )));
                }
                if obstruction.is_none() {
                    obstruction = obs;
                }
                factors.push(rep);
            }
        }
    }
    Ok(Ok(RegularityReport {
        modulus: ctx.modulus().clone(),
        regular: obstruction.is_none(),
        factors,
        obstruction,
    }))
}
