//! Closed points of the projective line and of plane conics, quadratic
//! zero-cycles, the top Gersten differential and the quadratic degree.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{format_poly, Elem, Field, Place};
use crate::milnorwitt::{self, MwElement};
use crate::poly::Poly;
use crate::wittgw::{self, Decision, GwElement};

/// Name of the coordinate of the projective line.
pub const LINE_VARIABLE: &str = "t";

/// A smooth projective curve of genus zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    ProjectiveLine(Field),
    /// The diagonal conic `a x^2 + b y^2 + c z^2 = 0`.
    Conic { field: Field, a: Elem, b: Elem, c: Elem },
}

impl Curve {
    pub fn projective_line(k: &Field) -> Result<Curve> {
        check_base(k)?;
        Ok(Curve::ProjectiveLine(k.clone()))
    }

    pub fn conic(k: &Field, a: Elem, b: Elem, c: Elem) -> Result<Curve> {
        check_base(k)?;
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Curve::Conic { field: k.clone(), a, b, c })
    }

    pub fn field(&self) -> &Field {
        match self {
            Curve::ProjectiveLine(k) | Curve::Conic { field: k, .. } => k,
        }
    }

    /// The function field `k(t)` of the projective line.
    pub fn line_function_field(&self) -> Result<Field> {
        match self {
            Curve::ProjectiveLine(k) => Field::function_field(k, LINE_VARIABLE),
            Curve::Conic { .. } => Err(Error::UnsupportedField("function fields of conics".into())),
        }
    }

    /// Value of the conic equation at a point with coordinates in `l`.
    pub fn conic_value(&self, l: &Field, p: &[Elem; 3]) -> Result<Elem> {
        let Curve::Conic { field, a, b, c } = self else {
            return Err(Error::InvalidInput("not a conic".into()));
        };
        let mut s = l.zero();
        for (coef, x) in [a, b, c].into_iter().zip(p) {
            let coef = l.embed(field, coef)?;
            s = l.add(&s, &l.mul(&coef, &l.square(x)));
        }
        Ok(s)
    }
}

fn check_base(k: &Field) -> Result<()> {
    if k.is_function_field() {
        return Err(Error::UnsupportedField(format!("curves over {k}")));
    }
    Ok(())
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::ProjectiveLine(k) => write!(f, "P1({k})"),
            Curve::Conic { field, a, b, c } => {
                write!(f, "Conic({field}, {}, {}, {})", field.format(a), field.format(b), field.format(c))
            }
        }
    }
}

/// A closed point of a conic, certified by coordinates in its residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicPoint {
    residue: Field,
    degree: usize,
    coords: [Elem; 3],
}

impl ConicPoint {
    /// Checks the certificate and scales the last nonzero coordinate to 1.
    pub fn new(curve: &Curve, residue: &Field, coords: [Elem; 3]) -> Result<ConicPoint> {
        let k = curve.field();
        let degree = residue.degree_over(k).ok_or(Error::DescriptorMismatch)?;
        let Some(last) = coords.iter().rev().find(|x| !x.is_zero()).cloned() else {
            return Err(Error::InvalidInput("zero coordinates".into()));
        };
        let inv = residue.inv(&last)?;
        let coords = coords.map(|x| residue.mul(&x, &inv));
        if !curve.conic_value(residue, &coords)?.is_zero() {
            return Err(Error::InvalidInput("coordinates do not lie on the conic".into()));
        }
        Ok(ConicPoint { residue: residue.clone(), degree, coords })
    }

    pub fn residue_field(&self) -> &Field {
        &self.residue
    }

    pub fn coords(&self) -> &[Elem; 3] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn key(&self) -> (usize, Option<&Poly>, &[Elem; 3]) {
        (self.degree, self.residue.minpoly(), &self.coords)
    }
}

impl PartialOrd for ConicPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConicPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// A closed point of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    /// The zero set of a monic irreducible polynomial on the affine line.
    Finite(Poly),
    Infinity,
    Conic(ConicPoint),
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(f) => f.deg(),
            ClosedPoint::Infinity => 1,
            ClosedPoint::Conic(p) => p.degree,
        }
    }

    pub fn from_place(v: &Place) -> ClosedPoint {
        match v {
            Place::Finite(f) => ClosedPoint::Finite(f.clone()),
            Place::Infinite => ClosedPoint::Infinity,
        }
    }

    pub fn place(&self) -> Option<Place> {
        match self {
            ClosedPoint::Finite(f) => Some(Place::Finite(f.clone())),
            ClosedPoint::Infinity => Some(Place::Infinite),
            ClosedPoint::Conic(_) => None,
        }
    }

    /// Residue field `κ_x`.
    pub fn residue_field(&self, curve: &Curve) -> Result<Field> {
        match (self, curve) {
            (ClosedPoint::Conic(p), Curve::Conic { .. }) => Ok(p.residue.clone()),
            (ClosedPoint::Conic(_), _) | (_, Curve::Conic { .. }) => Err(Error::InvalidInput(format!(
                "point {} does not lie on {curve}",
                self.display(curve.field())
            ))),
            (_, Curve::ProjectiveLine(_)) => curve.line_function_field()?.residue_field(&self.place().unwrap()),
        }
    }

    /// Checks that the point is a valid closed point of the curve.
    pub fn validate(&self, curve: &Curve) -> Result<()> {
        let k = curve.field();
        match (self, curve) {
            (ClosedPoint::Finite(f), Curve::ProjectiveLine(_)) => {
                if f.deg() == 0 || !f.is_monic(k) || !crate::factor::is_irreducible(f, k)? {
                    return Err(Error::NonCanonicalUniformizer);
                }
                Ok(())
            }
            (ClosedPoint::Infinity, Curve::ProjectiveLine(_)) => Ok(()),
            (ClosedPoint::Conic(p), Curve::Conic { .. }) => {
                ConicPoint::new(curve, &p.residue, p.coords.clone())?;
                Ok(())
            }
            _ => Err(Error::InvalidInput(format!("point {} does not lie on {curve}", self.display(k)))),
        }
    }

    pub fn display(&self, k: &Field) -> String {
        match self {
            ClosedPoint::Finite(f) => format_poly(k, &f.0, LINE_VARIABLE),
            ClosedPoint::Infinity => "inf".to_string(),
            ClosedPoint::Conic(p) => {
                let l = &p.residue;
                let c: Vec<String> = p.coords.iter().map(|x| l.format(x)).collect();
                format!("({} : {} : {}) over {l}", c[0], c[1], c[2])
            }
        }
    }
}

/// The chosen generator of `m_x / m_x^2` at a point of the projective line:
/// the monic polynomial at a finite point and `1/t` at infinity. Replacing it
/// by `c` times itself rescales the value at the point by `<c>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTrivialization {
    pub point: ClosedPoint,
    pub generator: String,
}

impl TwistTrivialization {
    pub fn canonical(point: &ClosedPoint, k: &Field) -> TwistTrivialization {
        let generator = match point {
            ClosedPoint::Finite(f) => format_poly(k, &f.0, LINE_VARIABLE),
            ClosedPoint::Infinity => format!("1/{LINE_VARIABLE}"),
            ClosedPoint::Conic(p) => format!("local parameter at {}", point.display(p.residue.base().unwrap_or(k))),
        };
        TwistTrivialization { point: point.clone(), generator }
    }
}

/// A classical zero-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycle {
    pub curve: Curve,
    pub support: Vec<(ClosedPoint, i64)>,
}

/// `Σ n_x [κ_x : k]`.
pub fn cdeg(z: &ZeroCycle) -> i64 {
    z.support.iter().map(|(x, n)| n * x.degree() as i64).sum()
}

/// A formal sum of closed points with Grothendieck-Witt coefficients in the
/// trivialized groups `GW(κ_x)`, kept sorted by point with distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticZeroCycle {
    curve: Curve,
    support: Vec<(ClosedPoint, GwElement)>,
}

impl QuadraticZeroCycle {
    pub fn zero(curve: &Curve) -> QuadraticZeroCycle {
        QuadraticZeroCycle { curve: curve.clone(), support: Vec::new() }
    }

    /// Validates points and coefficient fields, merges repeated points and
    /// drops coefficients that are zero in `GW(κ_x)`.
    pub fn new(curve: &Curve, terms: Vec<(ClosedPoint, GwElement)>) -> Result<QuadraticZeroCycle> {
        let mut z = QuadraticZeroCycle::zero(curve);
        for (x, g) in terms {
            x.validate(curve)?;
            if g.field() != &x.residue_field(curve)? {
                return Err(Error::DescriptorMismatch);
            }
            z.add_term(x, g)?;
        }
        Ok(z)
    }

    fn add_term(&mut self, x: ClosedPoint, g: GwElement) -> Result<()> {
        match self.support.binary_search_by(|(y, _)| y.cmp(&x)) {
            Ok(i) => {
                let s = self.support[i].1.add(&g)?;
                if is_zero_gw(&s)? {
                    self.support.remove(i);
                } else {
                    self.support[i].1 = s;
                }
            }
            Err(i) => {
                if !is_zero_gw(&g)? {
                    self.support.insert(i, (x, g));
                }
            }
        }
        Ok(())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn support(&self) -> &[(ClosedPoint, GwElement)] {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, o: &QuadraticZeroCycle) -> Result<QuadraticZeroCycle> {
        if self.curve != o.curve {
            return Err(Error::DescriptorMismatch);
        }
        let mut z = self.clone();
        for (x, g) in &o.support {
            z.add_term(x.clone(), g.clone())?;
        }
        Ok(z)
    }

    pub fn neg(&self) -> QuadraticZeroCycle {
        let support = self.support.iter().map(|(x, g)| (x.clone(), g.neg())).collect();
        QuadraticZeroCycle { curve: self.curve.clone(), support }
    }

    pub fn sub(&self, o: &QuadraticZeroCycle) -> Result<QuadraticZeroCycle> {
        self.add(&o.neg())
    }

    /// Multiplication by `<c>` for `c ∈ k^×`, acting on each `GW(κ_x)`.
    pub fn scale(&self, c: &Elem) -> Result<QuadraticZeroCycle> {
        self.mul_gw(&GwElement::unit(self.curve.field(), c)?)
    }

    /// The `GW(k)`-module structure: multiplication by the base change of `c`
    /// to each residue field.
    pub fn mul_gw(&self, c: &GwElement) -> Result<QuadraticZeroCycle> {
        let mut terms = Vec::new();
        for (x, g) in &self.support {
            terms.push((x.clone(), g.mul(&base_change(c, g.field())?)?));
        }
        QuadraticZeroCycle::new(&self.curve, terms)
    }
}

/// Base change of a Grothendieck-Witt element along `k ⊂ l`.
pub fn base_change(c: &GwElement, l: &Field) -> Result<GwElement> {
    let k = c.field();
    let entries = c.witt().rep().entries().iter().map(|e| l.embed(k, e)).collect::<Result<Vec<_>>>()?;
    GwElement::make(c.rank(), crate::wittgw::WittClass::from_form(&crate::quadforms::DiagonalForm::new(l, entries)?)?)
}

fn is_zero_gw(g: &GwElement) -> Result<bool> {
    Ok(g.rank() == 0 && g.witt().is_zero()? == Decision::Yes)
}

/// Equality of cycles as chains, i.e. pointwise in `GW(κ_x)`.
pub fn cycles_equal(z1: &QuadraticZeroCycle, z2: &QuadraticZeroCycle) -> Result<Decision> {
    let d = z1.sub(z2)?;
    let mut verdict = Decision::Yes;
    for (_, g) in &d.support {
        if g.rank() != 0 {
            return Ok(Decision::No);
        }
        verdict = verdict.and(g.witt().is_zero()?);
    }
    Ok(verdict)
}

/// Quadratic degree `Σ_x tr_{κ_x/k} z(x)`.
pub fn qdeg(z: &QuadraticZeroCycle) -> Result<GwElement> {
    let k = z.curve.field();
    let mut sum = GwElement::zero(k);
    for (_, g) in &z.support {
        let t = milnorwitt::transfer_to_base(g, k).map_err(|e| match e {
            Error::UnsupportedField(s) => Error::TowerBoundExceeded(s),
            e => e,
        })?;
        sum = sum.add(&t)?;
    }
    Ok(sum)
}

/// Pointwise rank.
pub fn forget(z: &QuadraticZeroCycle) -> ZeroCycle {
    ZeroCycle { curve: z.curve.clone(), support: z.support.iter().map(|(x, g)| (x.clone(), g.rank())).collect() }
}

/// Lifts a classical cycle: `n ↦ n<1>`.
pub fn lift_cycle(z: &ZeroCycle) -> Result<QuadraticZeroCycle> {
    let mut terms = Vec::new();
    for (x, n) in &z.support {
        let l = x.residue_field(&z.curve)?;
        terms.push((x.clone(), GwElement::one(&l).times(*n)?));
    }
    QuadraticZeroCycle::new(&z.curve, terms)
}

/// The cycle of residues of a degree-one element of `K^MW_1(k(t))`.
pub fn residue_divisor(x: &MwElement) -> Result<QuadraticZeroCycle> {
    if x.degree() != 1 {
        return Err(Error::UnsupportedDegree(x.degree()));
    }
    let f = x.field();
    let k = f.base().filter(|_| f.is_function_field()).ok_or_else(|| {
        Error::UnsupportedField(format!("{f} is not a rational function field"))
    })?;
    let curve = Curve::projective_line(k)?;
    let mut terms = Vec::new();
    for v in milnorwitt::support_places(x)? {
        let r = milnorwitt::residue(x, &v)?.to_gw()?;
        terms.push((ClosedPoint::from_place(&v), r));
    }
    QuadraticZeroCycle::new(&curve, terms)
}

/// Verdict of [`chowwitt_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChowWittVerdict {
    /// `β` with `residue_divisor(β) = z1 - z2`.
    EqualWithCertificate(MwElement),
    NotEqual,
    Unknown,
}

/// Default cap on the number of lifting steps in [`chowwitt_equal`].
pub const DEFAULT_LIFT_STEPS: u64 = 256;

/// Decides equality in the Chow-Witt group of zero-cycles of the projective
/// line. Different quadratic degrees separate classes; otherwise a degree-one
/// element with the difference as residue divisor is constructed by lifting
/// the coefficient at the point of highest degree with `<B>·[f]`,
/// `deg B < deg f`, until only infinity remains.
pub fn chowwitt_equal(z1: &QuadraticZeroCycle, z2: &QuadraticZeroCycle, max_steps: u64) -> Result<ChowWittVerdict> {
    let d = z1.sub(z2)?;
    match wittgw::gw_equal(&qdeg(&d)?, &GwElement::zero(d.curve.field()))? {
        Decision::No => return Ok(ChowWittVerdict::NotEqual),
        Decision::Undecidable => return Ok(ChowWittVerdict::Unknown),
        Decision::Yes => {}
    }
    let Curve::ProjectiveLine(k) = &d.curve else {
        return Ok(ChowWittVerdict::Unknown);
    };
    let f = d.curve.line_function_field()?;
    let mut beta = MwElement::zero(&f, 1)?;
    let mut steps = 0;
    loop {
        let rest = d.sub(&residue_divisor(&beta)?)?;
        let target = rest
            .support
            .iter()
            .filter(|(x, _)| matches!(x, ClosedPoint::Finite(_)))
            .max_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)))
            .cloned();
        let Some((ClosedPoint::Finite(p), g)) = target else {
            if rest.is_empty() {
                return Ok(ChowWittVerdict::EqualWithCertificate(beta));
            }
            return Ok(ChowWittVerdict::Unknown);
        };
        if steps >= max_steps {
            return Ok(ChowWittVerdict::Unknown);
        }
        steps += 1;
        beta = beta.add(&lift_at(&f, k, &p, &g)?)?;
    }
}

/// An element of `K^MW_1(k(t))` whose residue at `p` is `g` and whose other
/// finite residues sit at places of smaller degree.
fn lift_at(f: &Field, k: &Field, p: &Poly, g: &GwElement) -> Result<MwElement> {
    let place = Place::Finite(p.clone());
    let kappa = f.residue_field(&place)?;
    let dp = f.reduce_poly(&p.derivative(k), &place)?;
    let sym = milnorwitt::mw_unit_symbol(f, &f.from_poly(p))?;
    let piece = |e: &Elem| -> Result<MwElement> {
        let b = kappa.mul(e, &dp);
        let bpoly = if kappa == *k { Poly::constant(b) } else { Poly::from_coeffs(kappa.coords(&b)) };
        let unit = MwElement::from_gw(&GwElement::unit(f, &f.from_poly(&bpoly))?);
        milnorwitt::mw_mul(&unit, &sym)
    };
    let entries = g.witt().rep().entries();
    let mut out = MwElement::zero(f, 1)?;
    for e in entries {
        out = out.add(&piece(e)?)?;
    }
    // remaining rank is a multiple of the hyperbolic element <1> + <-1>
    let s = (g.rank() - entries.len() as i64) / 2;
    if s != 0 {
        let h = piece(&kappa.one())?.add(&piece(&kappa.from_i64(-1))?)?;
        for _ in 0..s.unsigned_abs() {
            out = if s > 0 { out.add(&h)? } else { out.sub(&h)? };
        }
    }
    Ok(out)
}

impl fmt::Display for QuadraticZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.curve.field();
        let terms: Vec<String> = self.support.iter().map(|(x, g)| format!("{} @ {}", g, x.display(k))).collect();
        write!(f, "{}: {}", self.curve, if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::DiagonalForm;

    fn line(k: &Field) -> Curve {
        Curve::projective_line(k).unwrap()
    }

    fn gw_eq(a: &GwElement, b: &GwElement) -> bool {
        wittgw::gw_equal(a, b).unwrap() == Decision::Yes
    }

    #[test]
    fn quadratic_degree_examples() {
        let q = Field::rationals();
        let p1 = line(&q);
        let z = QuadraticZeroCycle::new(&p1, vec![(ClosedPoint::Finite(Poly::x(&q)), GwElement::one(&q))]).unwrap();
        assert!(gw_eq(&qdeg(&z).unwrap(), &GwElement::one(&q)));
        let f = Poly::from_i64s(&q, &[-2, 0, 1]);
        let pt = ClosedPoint::Finite(f);
        let l = pt.residue_field(&p1).unwrap();
        let z = QuadraticZeroCycle::new(&p1, vec![(pt, GwElement::one(&l))]).unwrap();
        let d = qdeg(&z).unwrap();
        assert_eq!(d.rank(), 2);
        assert!(gw_eq(&d, &GwElement::from_form(&DiagonalForm::from_i64s(&q, &[2, 1]).unwrap()).unwrap()));
        let m = q.from_i64(-1);
        let lhs = qdeg(&z.scale(&m).unwrap()).unwrap();
        let rhs = GwElement::unit(&q, &m).unwrap().mul(&d).unwrap();
        assert!(gw_eq(&lhs, &rhs));
    }

    #[test]
    fn classical_degree() {
        let q = Field::rationals();
        let p1 = line(&q);
        let x2 = ClosedPoint::Finite(Poly::from_i64s(&q, &[1, 0, 1]));
        let z = ZeroCycle { curve: p1.clone(), support: vec![(x2.clone(), 3)] };
        assert_eq!(cdeg(&z), 6);
        assert_eq!(cdeg(&ZeroCycle { curve: p1.clone(), support: vec![] }), 0);
        let l = x2.residue_field(&p1).unwrap();
        let qz = QuadraticZeroCycle::new(&p1, vec![(x2.clone(), GwElement::hyperbolic(&l))]).unwrap();
        assert_eq!(forget(&qz).support, vec![(x2, 2)]);
        let lifted = lift_cycle(&z).unwrap();
        assert_eq!(forget(&lifted), z);
    }

    #[test]
    fn residue_divisors() {
        let q = Field::rationals();
        let f = Field::function_field(&q, LINE_VARIABLE).unwrap();
        let c = milnorwitt::mw_unit_symbol(&f, &f.from_i64(3)).unwrap();
        assert!(residue_divisor(&c).unwrap().is_empty());
        let t = milnorwitt::mw_unit_symbol(&f, &f.parse("t").unwrap()).unwrap();
        let z = residue_divisor(&t).unwrap();
        let pts: Vec<ClosedPoint> = z.support().iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(pts, vec![ClosedPoint::Finite(Poly::x(&q)), ClosedPoint::Infinity]);
        assert!(gw_eq(&qdeg(&z).unwrap(), &GwElement::zero(&q)));
        let s = milnorwitt::mw_unit_symbol(&f, &f.parse("t^2+1").unwrap()).unwrap();
        let z = residue_divisor(&s).unwrap();
        assert_eq!(z.support().len(), 2);
        assert!(gw_eq(&qdeg(&z).unwrap(), &GwElement::zero(&q)));
    }

    #[test]
    fn chowwitt_equality() {
        let q = Field::rationals();
        let p1 = line(&q);
        let at = |c: i64, g: GwElement| {
            QuadraticZeroCycle::new(&p1, vec![(ClosedPoint::Finite(Poly::linear(&q, &q.from_i64(c))), g)]).unwrap()
        };
        let z0 = at(0, GwElement::one(&q));
        assert!(matches!(chowwitt_equal(&z0, &z0, 8).unwrap(), ChowWittVerdict::EqualWithCertificate(_)));
        let z1 = at(1, GwElement::one(&q));
        match chowwitt_equal(&z0, &z1, 8).unwrap() {
            ChowWittVerdict::EqualWithCertificate(b) => {
                assert_eq!(residue_divisor(&b).unwrap(), z0.sub(&z1).unwrap());
            }
            v => panic!("{v:?}"),
        }
        let z2 = at(0, GwElement::unit(&q, &q.from_i64(2)).unwrap());
        assert_eq!(chowwitt_equal(&z0, &z2, 8).unwrap(), ChowWittVerdict::NotEqual);
    }

    #[test]
    fn higher_degree_certificates() {
        let q = Field::rationals();
        let p1 = line(&q);
        let x = ClosedPoint::Finite(Poly::from_i64s(&q, &[-2, 0, 0, 1]));
        let l = x.residue_field(&p1).unwrap();
        let g = GwElement::unit(&l, &l.parse("a + 1").unwrap()).unwrap();
        let z1 = QuadraticZeroCycle::new(&p1, vec![(x, g.clone())]).unwrap();
        let target = qdeg(&z1).unwrap();
        // a cycle on rational points with the same quadratic degree
        let mut terms = Vec::new();
        for (i, e) in target.witt().rep().entries().iter().enumerate() {
            let pt = ClosedPoint::Finite(Poly::linear(&q, &q.from_i64(i as i64)));
            terms.push((pt, GwElement::unit(&q, e).unwrap()));
        }
        let extra = (target.rank() - terms.len() as i64) / 2;
        terms.push((ClosedPoint::Infinity, GwElement::hyperbolic(&q).times(extra).unwrap()));
        let z2 = QuadraticZeroCycle::new(&p1, terms).unwrap();
        match chowwitt_equal(&z1, &z2, 64).unwrap() {
            ChowWittVerdict::EqualWithCertificate(b) => {
                let r = residue_divisor(&b).unwrap();
                assert_eq!(cycles_equal(&r, &z1.sub(&z2).unwrap()).unwrap(), Decision::Yes);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn conic_points() {
        let f5 = Field::prime(5).unwrap();
        let c = Curve::conic(&f5, f5.one(), f5.one(), f5.one()).unwrap();
        let p = ConicPoint::new(&c, &f5, [f5.from_i64(1), f5.from_i64(2), f5.zero()]).unwrap();
        assert_eq!(ClosedPoint::Conic(p).degree(), 1);
        assert!(ConicPoint::new(&c, &f5, [f5.from_i64(1), f5.from_i64(1), f5.zero()]).is_err());
    }
}
