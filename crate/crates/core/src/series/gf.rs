//! Every generating function of the theory, built twice: once from its
//! closed form through series algebra, once by iterating its functional
//! equation. [`gf`] insists that the two agree.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::fixed_point::{solve_fixed_point, Iterate};
use super::multi::{Marker, MultiSeries};
use super::univariate::TruncatedSeries;
use super::divide_stripped;
use crate::error::SeriesError;

/// Extra terms carried through closed-form evaluation, absorbing the order
/// lost to divisions by powers of `x`.
pub const CLOSED_FORM_SLACK: usize = 8;

type Uni = TruncatedSeries;
type Multi = MultiSeries;
type Res<T> = Result<T, SeriesError>;

/// Identifier of a generating function.
///
/// Univariate ids count paths (`A`, `A_INC`, ...) or give popularities
/// (`POP_*`, `Y(k)`, `W(k)`, ...). In the multivariate ids `y` and `z` carry
/// the statistic named in [`GfId::description`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfId {
    A,
    P,
    M,
    V,
    W,
    G,
    N,
    S,
    Y(u32),
    YGeq(u32),
    YLeq(u32),
    PopU,
    PopD,
    PopPeak,
    PopRet,
    PopCat,
    AInc,
    A0,
    PopIncU,
    PopIncD,
    PopIncPeak,
    PopIncRet,
    PopIncCat,
    Wk(u32),
    WGeq(u32),
    WLeq(u32),
    AXyz,
    PXy,
    RXy,
    CXy,
    PkXy(u32),
    AIncXyz,
    ZXyz,
    BXy,
    RIncXy,
    CIncXy,
    UXy,
    PkIncXy(u32),
    ZkXy(u32),
}

const PLAIN_IDS: [(GfId, &str); 31] = [
    (GfId::A, "A"),
    (GfId::P, "P"),
    (GfId::M, "M"),
    (GfId::V, "V"),
    (GfId::W, "W"),
    (GfId::G, "G"),
    (GfId::N, "N"),
    (GfId::S, "S"),
    (GfId::PopU, "POP_U"),
    (GfId::PopD, "POP_D"),
    (GfId::PopPeak, "POP_PEAK"),
    (GfId::PopRet, "POP_RET"),
    (GfId::PopCat, "POP_CAT"),
    (GfId::AInc, "A_INC"),
    (GfId::A0, "A0"),
    (GfId::PopIncU, "POP_INC_U"),
    (GfId::PopIncD, "POP_INC_D"),
    (GfId::PopIncPeak, "POP_INC_PEAK"),
    (GfId::PopIncRet, "POP_INC_RET"),
    (GfId::PopIncCat, "POP_INC_CAT"),
    (GfId::AXyz, "A_XYZ"),
    (GfId::PXy, "P_XY"),
    (GfId::RXy, "R_XY"),
    (GfId::CXy, "C_XY"),
    (GfId::AIncXyz, "A_INC_XYZ"),
    (GfId::ZXyz, "Z_XYZ"),
    (GfId::BXy, "B_XY"),
    (GfId::RIncXy, "R_INC_XY"),
    (GfId::CIncXy, "C_INC_XY"),
    (GfId::UXy, "U_XY"),
    (GfId::A0, "A_0"),
];

const PARAM_IDS: [&str; 9] = [
    "Y", "Y_GEQ", "Y_LEQ", "W", "W_GEQ", "W_LEQ", "PK_XY", "PK_INC_XY", "ZK_XY",
];

impl GfId {
    /// Every id, with parameterized ones instantiated for `k = 1..=kmax`.
    pub fn all(kmax: u32) -> Vec<GfId> {
        let mut out: Vec<GfId> = PLAIN_IDS[..30].iter().map(|(id, _)| *id).collect();
        for k in 1..=kmax {
            out.extend([
                GfId::Y(k),
                GfId::YGeq(k),
                GfId::YLeq(k),
                GfId::Wk(k),
                GfId::WGeq(k),
                GfId::WLeq(k),
                GfId::PkXy(k),
                GfId::PkIncXy(k),
                GfId::ZkXy(k),
            ]);
        }
        out.sort();
        out
    }

    pub fn param(self) -> Option<u32> {
        match self {
            GfId::Y(k)
            | GfId::YGeq(k)
            | GfId::YLeq(k)
            | GfId::Wk(k)
            | GfId::WGeq(k)
            | GfId::WLeq(k)
            | GfId::PkXy(k)
            | GfId::PkIncXy(k)
            | GfId::ZkXy(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_multivariate(self) -> bool {
        matches!(
            self,
            GfId::AXyz
                | GfId::PXy
                | GfId::RXy
                | GfId::CXy
                | GfId::PkXy(_)
                | GfId::AIncXyz
                | GfId::ZXyz
                | GfId::BXy
                | GfId::RIncXy
                | GfId::CIncXy
                | GfId::UXy
                | GfId::PkIncXy(_)
                | GfId::ZkXy(_)
        )
    }

    /// One-line meaning of the series.
    pub fn description(self) -> String {
        match self {
            GfId::A => "air-pocket paths by length".into(),
            GfId::P => "peakless Motzkin paths, x A(x)".into(),
            GfId::M => "A(x)/x".into(),
            GfId::V => "A(x)/x^2".into(),
            GfId::W => "x/(1-x)".into(),
            GfId::G => "auxiliary series G of the meander system".into(),
            GfId::N => "auxiliary series N of the meander system".into(),
            GfId::S => "Fibonacci meanders of length 2n".into(),
            GfId::Y(k) => format!("popularity of pyramids of size {k}"),
            GfId::YGeq(k) => format!("popularity of pyramids of size at least {k}"),
            GfId::YLeq(k) => format!("popularity of pyramids of size at most {k}"),
            GfId::PopU => "popularity of up steps".into(),
            GfId::PopD => "popularity of D steps".into(),
            GfId::PopPeak => "popularity of peaks".into(),
            GfId::PopRet => "popularity of returns".into(),
            GfId::PopCat => "popularity of catastrophes".into(),
            GfId::AInc => "non-decreasing paths by length".into(),
            GfId::A0 => "paths with all valleys at height 0".into(),
            GfId::PopIncU => "non-decreasing: popularity of up steps".into(),
            GfId::PopIncD => "non-decreasing: popularity of D steps".into(),
            GfId::PopIncPeak => "non-decreasing: popularity of peaks".into(),
            GfId::PopIncRet => "non-decreasing: popularity of returns".into(),
            GfId::PopIncCat => "non-decreasing: popularity of catastrophes".into(),
            GfId::Wk(k) => format!("non-decreasing: popularity of pyramids of size {k}"),
            GfId::WGeq(k) => format!("non-decreasing: pyramids of size at least {k}"),
            GfId::WLeq(k) => format!("non-decreasing: pyramids of size at most {k}"),
            GfId::AXyz => "paths, y = up steps, z = D steps".into(),
            GfId::PXy => "paths, y = peaks".into(),
            GfId::RXy => "paths, y = returns".into(),
            GfId::CXy => "paths, y = catastrophes".into(),
            GfId::PkXy(k) => format!("paths, y = pyramids of size {k}"),
            GfId::AIncXyz => "non-decreasing paths, y = up steps, z = D steps".into(),
            GfId::ZXyz => "valleys at 0, y = up steps, z = D steps".into(),
            GfId::BXy => "non-decreasing paths, y = peaks".into(),
            GfId::RIncXy => "non-decreasing paths, y = returns".into(),
            GfId::CIncXy => "non-decreasing paths, y = catastrophes".into(),
            GfId::UXy => "valleys at 0, y = catastrophes".into(),
            GfId::PkIncXy(k) => format!("non-decreasing paths, y = pyramids of size {k}"),
            GfId::ZkXy(k) => format!("valleys at 0, y = pyramids of size {k}"),
        }
    }
}

impl fmt::Display for GfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GfId::Y(_) => "Y",
            GfId::YGeq(_) => "Y_GEQ",
            GfId::YLeq(_) => "Y_LEQ",
            GfId::Wk(_) => "W",
            GfId::WGeq(_) => "W_GEQ",
            GfId::WLeq(_) => "W_LEQ",
            GfId::PkXy(_) => "PK_XY",
            GfId::PkIncXy(_) => "PK_INC_XY",
            GfId::ZkXy(_) => "ZK_XY",
            other => {
                let (_, name) = PLAIN_IDS.iter().find(|(id, _)| id == other).unwrap();
                return f.write_str(name);
            }
        };
        write!(f, "{name}({})", self.param().unwrap())
    }
}

impl FromStr for GfId {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        if let Some((id, _)) = PLAIN_IDS.iter().find(|(_, name)| *name == t) {
            return Ok(*id);
        }
        let unknown = || SeriesError::UnknownId(s.to_string());
        let (name, rest) = t.split_once('(').ok_or_else(unknown)?;
        let k: u32 = rest
            .strip_suffix(')')
            .and_then(|k| k.trim().parse().ok())
            .ok_or_else(unknown)?;
        if !PARAM_IDS.contains(&name) {
            return Err(unknown());
        }
        if k == 0 {
            return Err(SeriesError::BadParameter);
        }
        Ok(match name {
            "Y" => GfId::Y(k),
            "Y_GEQ" => GfId::YGeq(k),
            "Y_LEQ" => GfId::YLeq(k),
            "W" => GfId::Wk(k),
            "W_GEQ" => GfId::WGeq(k),
            "W_LEQ" => GfId::WLeq(k),
            "PK_XY" => GfId::PkXy(k),
            "PK_INC_XY" => GfId::PkIncXy(k),
            _ => GfId::ZkXy(k),
        })
    }
}

impl Serialize for GfId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GfId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A computed generating function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GfValue {
    Uni(TruncatedSeries),
    Multi(MultiSeries),
}

impl GfValue {
    pub fn order(&self) -> usize {
        match self {
            GfValue::Uni(s) => s.order(),
            GfValue::Multi(s) => s.order(),
        }
    }

    pub fn as_uni(&self) -> Option<&TruncatedSeries> {
        match self {
            GfValue::Uni(s) => Some(s),
            GfValue::Multi(_) => None,
        }
    }

    pub fn as_multi(&self) -> Option<&MultiSeries> {
        match self {
            GfValue::Multi(s) => Some(s),
            GfValue::Uni(_) => None,
        }
    }

    /// All markers set to 1.
    pub fn erased(&self) -> TruncatedSeries {
        match self {
            GfValue::Uni(s) => s.clone(),
            GfValue::Multi(s) => s.erase_markers(),
        }
    }

    pub fn first_difference(&self, other: &GfValue) -> Option<usize> {
        match (self, other) {
            (GfValue::Uni(a), GfValue::Uni(b)) => a.first_difference(b),
            (GfValue::Multi(a), GfValue::Multi(b)) => a.first_difference(b),
            _ => Some(0),
        }
    }

    pub fn first_non_integral(&self) -> Option<usize> {
        match self {
            GfValue::Uni(s) => s.first_non_integral(),
            GfValue::Multi(s) => s.first_non_integral(),
        }
    }

    fn truncate(self, order: usize) -> Self {
        match self {
            GfValue::Uni(s) => GfValue::Uni(s.with_order(order)),
            GfValue::Multi(s) => GfValue::Multi(s.with_order(order)),
        }
    }
}

impl fmt::Display for GfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfValue::Uni(s) => s.fmt(f),
            GfValue::Multi(s) => s.fmt(f),
        }
    }
}

fn check_request(id: GfId, order: usize) -> Res<()> {
    if order == 0 {
        return Err(SeriesError::BadOrder);
    }
    if id.param() == Some(0) {
        return Err(SeriesError::BadParameter);
    }
    Ok(())
}

/// The series `id` to order `order`, after checking that the closed form and
/// the functional equation give the same coefficients and that they are
/// integers.
pub fn gf(id: GfId, order: usize) -> Res<GfValue> {
    let closed = gf_closed(id, order)?;
    let equation = gf_equation(id, order)?;
    if let Some(index) = closed.first_difference(&equation) {
        return Err(SeriesError::Mismatch {
            id: id.to_string(),
            index,
        });
    }
    if let Some(index) = closed.first_non_integral() {
        return Err(SeriesError::NonIntegral {
            id: id.to_string(),
            index,
        });
    }
    Ok(closed)
}

/// Closed-form route only.
pub fn gf_closed(id: GfId, order: usize) -> Res<GfValue> {
    check_request(id, order)?;
    let c = Closed::new(order + CLOSED_FORM_SLACK);
    let value = match id {
        GfId::A => GfValue::Uni(c.a()?),
        GfId::P => GfValue::Uni(c.base()?.scale(&half())),
        GfId::M => GfValue::Uni(c.m()?),
        GfId::V => GfValue::Uni(c.v()?),
        GfId::W => GfValue::Uni(Uni::geometric_from(1, c.l)),
        GfId::G => GfValue::Uni(c.g()?),
        GfId::N => GfValue::Uni(c.n()?),
        GfId::S => GfValue::Uni(c.s()?),
        GfId::Y(k) => GfValue::Uni(c.y(k)?),
        GfId::YGeq(k) => GfValue::Uni(c.geq(&c.y(1)?, k)?),
        GfId::YLeq(k) => GfValue::Uni(c.leq(&c.y(1)?, k)?),
        GfId::PopU => GfValue::Uni(c.pop_u()?),
        GfId::PopD => GfValue::Uni(c.y(1)?),
        GfId::PopPeak => GfValue::Uni(c.pop_peak()?),
        GfId::PopRet => GfValue::Uni(c.pop_ret()?),
        GfId::PopCat => GfValue::Uni(c.pop_cat()?),
        GfId::AInc => GfValue::Uni(c.ratio(&[(2, 1), (3, -1)], &[(0, 1), (1, -2)])?),
        GfId::A0 => GfValue::Uni(c.ratio(&[(2, 1)], &[(0, 1), (1, -1), (2, -1)])?),
        GfId::PopIncU => GfValue::Uni(c.a_inc_xyz()?.marker_popularity(Marker::Y)),
        GfId::PopIncD => GfValue::Uni(c.w(1)?),
        GfId::PopIncPeak => GfValue::Uni(c.ratio(
            &[(2, 1), (3, -3), (4, 3), (5, -1)],
            &[(0, 1), (1, -4), (2, 4)],
        )?),
        GfId::PopIncRet => GfValue::Uni(c.pop_inc_ret()?),
        GfId::PopIncCat => GfValue::Uni(c.pop_inc_cat()?),
        GfId::Wk(k) => GfValue::Uni(c.w(k)?),
        GfId::WGeq(k) => GfValue::Uni(c.geq(&c.w(1)?, k)?),
        GfId::WLeq(k) => GfValue::Uni(c.leq(&c.w(1)?, k)?),
        GfId::AXyz => GfValue::Multi(c.a_xyz()?),
        GfId::PXy => GfValue::Multi(c.p_xy()?),
        GfId::RXy => GfValue::Multi(c.r_xy()?),
        GfId::CXy => GfValue::Multi(c.c_xy()?),
        GfId::PkXy(k) => GfValue::Multi(c.pk_xy(k)?),
        GfId::AIncXyz => GfValue::Multi(c.a_inc_xyz()?),
        GfId::ZXyz => GfValue::Multi(c.z_xyz()?),
        GfId::BXy => GfValue::Multi(c.b_xy()?),
        GfId::RIncXy => GfValue::Multi(c.r_inc_xy()?),
        GfId::CIncXy => GfValue::Multi(c.c_inc_xy()?),
        GfId::UXy => GfValue::Multi(c.u_xy()?),
        GfId::PkIncXy(k) => GfValue::Multi(c.pk_inc_xy(k)?),
        GfId::ZkXy(k) => GfValue::Multi(c.zk_xy(k)?),
    };
    Ok(value.truncate(order))
}

/// Functional-equation route only.
pub fn gf_equation(id: GfId, order: usize) -> Res<GfValue> {
    check_request(id, order)?;
    let n = order;
    let e = Equations { n };
    let markers = Vars::markers(n);
    let jet_y = Vars::jet(n, Marker::Y);
    let jet_z = Vars::jet(n, Marker::Z);
    let pop = |s: Multi| GfValue::Uni(s.slice(1, 0));
    Ok(match id {
        GfId::A => GfValue::Uni(e.a()?),
        GfId::P => GfValue::Uni(e.p()?),
        GfId::M => GfValue::Uni(e.m()?),
        GfId::V => GfValue::Uni(e.v()?),
        GfId::W => GfValue::Uni(e.w()?),
        GfId::G => GfValue::Uni(e.gns()?.0),
        GfId::N => GfValue::Uni(e.gns()?.1),
        GfId::S => GfValue::Uni(e.gns()?.2),
        GfId::Y(k) => pop(e.pk_xy(k, &jet_y)?),
        GfId::YGeq(k) => GfValue::Uni(e.pyramid_sum(k..=n as u32, |j| e.pk_xy(j, &jet_y))?),
        GfId::YLeq(k) => GfValue::Uni(e.pyramid_sum(1..=k, |j| e.pk_xy(j, &jet_y))?),
        GfId::PopU => pop(e.a_xyz(&jet_y)?),
        GfId::PopD => pop(e.a_xyz(&jet_z)?),
        GfId::PopPeak => pop(e.p_xy(&jet_y)?),
        GfId::PopRet => pop(e.r_xy(&jet_y)?),
        GfId::PopCat => pop(e.c_xy(&jet_y)?),
        GfId::AInc => GfValue::Uni(e.a_inc()?),
        GfId::A0 => GfValue::Uni(e.a0()?),
        GfId::PopIncU => pop(e.a_inc_xyz(&jet_y)?),
        GfId::PopIncD => pop(e.a_inc_xyz(&jet_z)?),
        GfId::PopIncPeak => pop(e.b_xy(&jet_y)?),
        GfId::PopIncRet => pop(e.r_inc_xy(&jet_y)?),
        GfId::PopIncCat => pop(e.c_inc_xy(&jet_y)?),
        GfId::Wk(k) => pop(e.pk_inc_xy(k, &jet_y)?),
        GfId::WGeq(k) => GfValue::Uni(e.pyramid_sum(k..=n as u32, |j| e.pk_inc_xy(j, &jet_y))?),
        GfId::WLeq(k) => GfValue::Uni(e.pyramid_sum(1..=k, |j| e.pk_inc_xy(j, &jet_y))?),
        GfId::AXyz => GfValue::Multi(e.a_xyz(&markers)?),
        GfId::PXy => GfValue::Multi(e.p_xy(&markers)?),
        GfId::RXy => GfValue::Multi(e.r_xy(&markers)?),
        GfId::CXy => GfValue::Multi(e.c_xy(&markers)?),
        GfId::PkXy(k) => GfValue::Multi(e.pk_xy(k, &markers)?),
        GfId::AIncXyz => GfValue::Multi(e.a_inc_xyz(&markers)?),
        GfId::ZXyz => GfValue::Multi(e.z_xyz(&markers)?),
        GfId::BXy => GfValue::Multi(e.b_xy(&markers)?),
        GfId::RIncXy => GfValue::Multi(e.r_inc_xy(&markers)?),
        GfId::CIncXy => GfValue::Multi(e.c_inc_xy(&markers)?),
        GfId::UXy => GfValue::Multi(e.u_xy(&markers)?),
        GfId::PkIncXy(k) => GfValue::Multi(e.pk_inc_xy(k, &markers)?),
        GfId::ZkXy(k) => GfValue::Multi(e.zk_xy(k, &markers)?),
    })
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Closed forms, evaluated at order `l`.
struct Closed {
    l: usize,
}

impl Closed {
    fn new(l: usize) -> Self {
        Self { l }
    }

    fn u(&self, terms: &[(usize, i64)]) -> Uni {
        Uni::poly(terms, self.l)
    }

    fn x(&self, i: usize) -> Uni {
        Uni::x_pow(i, self.l)
    }

    fn mm(&self, terms: &[(i64, usize, u32, u32)]) -> Multi {
        Multi::monomials(terms, self.l)
    }

    fn xm(&self, i: usize) -> Multi {
        self.mm(&[(1, i, 0, 0)])
    }

    fn y_minus_1(&self) -> Multi {
        self.mm(&[(1, 0, 1, 0), (-1, 0, 0, 0)])
    }

    fn ratio(&self, num: &[(usize, i64)], den: &[(usize, i64)]) -> Res<Uni> {
        self.u(num).div(&self.u(den))
    }

    fn sqrt_r(&self) -> Res<Uni> {
        self.u(&[(0, 1), (1, -2), (2, -1), (3, -2), (4, 1)]).sqrt()
    }

    /// `1 - x - x^2 - sqrt(R)`, which is `2 x A(x)`.
    fn base(&self) -> Res<Uni> {
        Ok(self.u(&[(0, 1), (1, -1), (2, -1)]) - self.sqrt_r()?)
    }

    fn a(&self) -> Res<Uni> {
        Ok(self.base()?.shift_div_x(1)?.scale(&half()))
    }

    fn m(&self) -> Res<Uni> {
        Ok(self.base()?.shift_div_x(2)?.scale(&half()))
    }

    fn v(&self) -> Res<Uni> {
        Ok(self.base()?.shift_div_x(3)?.scale(&half()))
    }

    fn g(&self) -> Res<Uni> {
        let (v, m) = (self.v()?, self.m()?);
        let num = self.u(&[(0, 1)]) + &self.x(2) * &v;
        let den = self.u(&[(0, 1), (1, -1)])
            - &self.x(2) * &m
            - &self.x(3) * &v
            - &(&self.x(4) * &v) * &m;
        num.div(&den)
    }

    fn n(&self) -> Res<Uni> {
        let (v, m, g) = (self.v()?, self.m()?, self.g()?);
        let k = &(&self.x(4) * &v) * &m + &self.x(3) * &v;
        Ok(&self.x(2) * &v + &k * &g)
    }

    fn s(&self) -> Res<Uni> {
        let r = self.sqrt_r()?;
        let num = self.u(&[(0, 1), (1, -1), (2, 1)]) - &r;
        // (x-1)(x^2+x+1)(x^2-3x+1) and (x-1)(x^2-x-1), expanded
        let p1 = self.u(&[(0, -1), (1, 3), (2, -1), (3, 1), (4, -3), (5, 1)]);
        let p2 = self.u(&[(0, 1), (2, -2), (3, 1)]);
        divide_stripped(&num, &(p1 + &p2 * &r))
    }

    fn y(&self, k: u32) -> Res<Uni> {
        let r = self.sqrt_r()?;
        let num = self.u(&[(0, 1), (2, 2), (3, -1)]) + &self.u(&[(0, 1), (1, -1)]) * &r;
        let q = num.div(&r.scale_int(2))?;
        Ok(q.mul_x_pow(k as usize + 1))
    }

    fn geq(&self, first: &Uni, k: u32) -> Res<Uni> {
        Ok((first * &Uni::geometric_from(0, self.l)).mul_x_pow(k as usize - 1))
    }

    fn leq(&self, first: &Uni, k: u32) -> Res<Uni> {
        let trunc = Uni::poly(&[(0, 1), (k as usize, -1)], self.l);
        Ok(&(first * &trunc) * &Uni::geometric_from(0, self.l))
    }

    fn pop_u(&self) -> Res<Uni> {
        let r = self.sqrt_r()?;
        divide_stripped(&self.base()?, &r.mul_x_pow(1).scale_int(2))
    }

    fn pop_peak(&self) -> Res<Uni> {
        let r = self.sqrt_r()?;
        let num = self.u(&[(0, 1), (1, 1), (2, -1)]) - &r;
        Ok(num.div(&r.scale_int(2))?.mul_x_pow(1))
    }

    /// `2 t / (1 + x - x^2 + sqrt(R))^2`.
    fn over_square(&self, t: Uni) -> Res<Uni> {
        let d = self.u(&[(0, 1), (1, 1), (2, -1)]) + self.sqrt_r()?;
        t.scale_int(2).div(&(&d * &d))
    }

    fn pop_ret(&self) -> Res<Uni> {
        self.over_square(self.u(&[(0, 1), (1, -1), (2, 1)]) - self.sqrt_r()?)
    }

    fn pop_cat(&self) -> Res<Uni> {
        self.over_square(self.base()?)
    }

    fn pop_inc_ret(&self) -> Res<Uni> {
        let num = self.u(&[(2, 1), (3, -2), (4, 1)]);
        let den = &self.u(&[(0, 1), (1, -2)]) * &self.u(&[(0, 1), (1, -1), (2, -1)]);
        num.div(&den)
    }

    fn pop_inc_cat(&self) -> Res<Uni> {
        let num = &self.u(&[(3, 1), (4, -1)]) * &self.u(&[(0, 1), (1, -1), (2, 1)]);
        let den = &self.u(&[(0, -1), (1, 2)]) * &self.u(&[(0, -1), (1, 1), (2, 1)]);
        num.div(&den)
    }

    fn w(&self, k: u32) -> Res<Uni> {
        let num = &self.u(&[(0, 1), (1, -1)]) * &self.u(&[(0, 1), (1, -4), (2, 5), (3, -2), (5, 1)]);
        let d1 = self.u(&[(0, 1), (1, -2)]);
        let den = &(&d1 * &d1) * &self.u(&[(0, 1), (1, -1), (2, -1)]);
        Ok(num.div(&den)?.mul_x_pow(k as usize + 1))
    }

    fn multi(&self, s: &Uni) -> Multi {
        Multi::from_univariate(s)
    }

    fn a_xyz(&self) -> Res<Multi> {
        let num = self.mm(&[
            (1, 0, 0, 0),
            (-1, 1, 1, 0),
            (-1, 2, 1, 1),
            (-2, 3, 2, 0),
            (2, 3, 2, 1),
        ]);
        let rad = self.mm(&[
            (1, 4, 2, 2),
            (2, 3, 2, 1),
            (-4, 3, 2, 0),
            (1, 2, 2, 0),
            (-2, 2, 1, 1),
            (-2, 1, 1, 0),
            (1, 0, 0, 0),
        ]);
        let num = (num - rad.sqrt()?)
            .shift_div_x(1)?
            .div_marker_pow(Marker::Y, 1)?;
        let den = self.mm(&[(2, 0, 0, 0), (2, 2, 1, 0), (-2, 2, 1, 1)]);
        num.div(&den)
    }

    fn p_xy(&self) -> Res<Multi> {
        let q = self.mm(&[(1, 0, 0, 0), (-1, 1, 0, 0), (-1, 2, 1, 0)]);
        let rad = &q * &q - self.mm(&[(4, 3, 1, 0)]);
        let num = (q - rad.sqrt()?).shift_div_x(1)?;
        Ok(num.scale(&half()))
    }

    /// `2 / (2 - d) - 1`.
    fn two_over(&self, d: Multi) -> Res<Multi> {
        let two = self.mm(&[(2, 0, 0, 0)]);
        Ok(two.div(&(&two - &d))? - self.mm(&[(1, 0, 0, 0)]))
    }

    fn r_xy(&self) -> Res<Multi> {
        let t = self.u(&[(0, 1), (1, -1), (2, 1)]) - self.sqrt_r()?;
        self.two_over(self.mm(&[(1, 0, 1, 0)]) * self.multi(&t))
    }

    fn c_xy(&self) -> Res<Multi> {
        let t = self.multi(&self.base()?);
        self.two_over(self.mm(&[(2, 2, 0, 0)]) + self.mm(&[(1, 0, 1, 0)]) * t)
    }

    fn pk_xy(&self, k: u32) -> Res<Multi> {
        let k = k as usize;
        let e1 = &self.xm(k + 1) * &self.y_minus_1();
        let r = self.multi(&self.u(&[(0, 1), (1, -2), (2, -1), (3, -2), (4, 1)]));
        let lin = self.mm(&[(4, 1, 0, 0), (-2, 1, 0, 0), (2, 2, 0, 0), (-2, 0, 0, 0)]);
        let q = &e1 * &(&e1 + &lin) + r;
        let num = &e1 - &(&self.xm(1) * &e1).scale_int(2)
            + self.mm(&[(1, 2, 0, 0), (1, 1, 0, 0), (-1, 0, 0, 0)])
            + q.sqrt()?;
        let den = (&self.xm(1) * &e1 - self.xm(1)).scale_int(2);
        divide_stripped(&num, &den)
    }

    fn a_inc_xyz(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 2, 1, 0)])
            * self.mm(&[(1, 0, 0, 0), (-1, 1, 1, 0)])
            * self.mm(&[(1, 1, 1, 1), (-1, 1, 1, 0), (-1, 0, 0, 1)])
            * self.mm(&[(1, 2, 1, 1), (1, 1, 1, 0), (-1, 0, 0, 0)]);
        let d1 = self.mm(&[
            (1, 3, 2, 1),
            (-1, 3, 2, 0),
            (1, 2, 2, 0),
            (-1, 2, 1, 1),
            (-2, 1, 1, 0),
            (1, 0, 0, 0),
        ]);
        num.div(&(d1 * self.z_den()))
    }

    /// `x^3 y^2 (z - 1) - x^2 y z - x y + 1`.
    fn z_den(&self) -> Multi {
        self.mm(&[
            (1, 3, 2, 1),
            (-1, 3, 2, 0),
            (-1, 2, 1, 1),
            (-1, 1, 1, 0),
            (1, 0, 0, 0),
        ])
    }

    fn z_xyz(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 3, 2, 0), (-1, 3, 2, 1), (1, 2, 1, 1)]);
        num.div(&self.z_den())
    }

    fn b_xy(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 2, 1, 0), (-1, 3, 1, 0)]);
        let den = self.mm(&[(1, 0, 0, 0), (-2, 1, 0, 0), (1, 2, 0, 0), (-1, 2, 1, 0)]);
        num.div(&den)
    }

    fn r_inc_xy(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 2, 1, 0)])
            * self.multi(&self.u(&[(0, 1), (1, -1)]))
            * self.multi(&self.u(&[(0, 1), (1, -1), (2, -1)]));
        let den = self.multi(&self.u(&[(0, 1), (1, -2)]))
            * self.mm(&[(1, 0, 0, 0), (-1, 1, 0, 0), (-1, 2, 1, 0)]);
        num.div(&den)
    }

    /// `1 - x - x^2 - x^3 (y - 1)`.
    fn u_den(&self) -> Multi {
        self.mm(&[(1, 0, 0, 0), (-1, 1, 0, 0), (-1, 2, 0, 0), (-1, 3, 1, 0), (1, 3, 0, 0)])
    }

    fn c_inc_xy(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 2, 0, 0), (-1, 3, 0, 0)])
            * self.mm(&[(1, 0, 0, 0), (1, 1, 1, 0), (-2, 1, 0, 0), (-1, 2, 1, 0)]);
        let den = self.multi(&self.u(&[(0, 1), (1, -2)])) * self.u_den();
        num.div(&den)
    }

    fn u_xy(&self) -> Res<Multi> {
        let num = self.mm(&[(1, 2, 0, 0), (-1, 3, 0, 0), (1, 3, 1, 0)]);
        num.div(&self.u_den())
    }

    fn pk_inc_xy(&self, k: u32) -> Res<Multi> {
        let k = k as usize;
        let one = self.mm(&[(1, 0, 0, 0)]);
        let g = self.multi(&Uni::geometric_from(2, self.l));
        let ym = self.y_minus_1();
        let geo = self.multi(&Uni::geometric_from(0, self.l));
        // 1 - x - x^2 (2 - x) / (1 - x)
        let inner = self.mm(&[(1, 0, 0, 0), (-1, 1, 0, 0)])
            - self.mm(&[(2, 2, 0, 0), (-1, 3, 0, 0)]) * geo;
        let num = &one - &g + &(&self.xm(k - 1) * &inner) * &ym
            - &self.xm(2 * k) * &(&ym * &ym);
        let e = &self.xm(k + 1) * &ym;
        let d1 = &one - &self.xm(1) - &g - &e;
        let d2 = &one - &g - &e;
        (self.xm(2) * num).div(&(d1 * d2))
    }

    fn zk_xy(&self, k: u32) -> Res<Multi> {
        let one = self.mm(&[(1, 0, 0, 0)]);
        let g = self.multi(&Uni::geometric_from(2, self.l));
        let e = &self.xm(k as usize + 1) * &self.y_minus_1();
        Ok(one.div(&(&one - &g - &e))? - one)
    }
}

/// Values substituted for `y` and `z` in a multivariate equation. A jet puts
/// `1 + e` in one slot and drops `e^2`, so the `e` coefficient of the
/// solution is the derivative at 1, i.e. the popularity series.
struct Vars {
    y: Multi,
    z: Multi,
    cap: Option<u32>,
}

impl Vars {
    fn markers(n: usize) -> Self {
        Self {
            y: Multi::marker(Marker::Y, n),
            z: Multi::marker(Marker::Z, n),
            cap: None,
        }
    }

    fn jet(n: usize, slot: Marker) -> Self {
        let one = Multi::one(n);
        let eps = &one + &Multi::marker(Marker::Y, n);
        let (y, z) = match slot {
            Marker::Y => (eps, one),
            Marker::Z => (one, eps),
        };
        Self {
            y,
            z,
            cap: Some(1),
        }
    }

    fn with(&self, y: Multi, z: Multi) -> Self {
        Self { y, z, cap: self.cap }
    }

    fn fix(&self, s: Multi) -> Multi {
        match self.cap {
            Some(c) => s.truncate_marker_degree(c),
            None => s,
        }
    }

    fn solve(&self, n: usize, map: impl Fn(&Multi) -> Multi) -> Res<Multi> {
        solve_fixed_point(Multi::zero(n), n, |a| Ok(self.fix(map(a))))
    }
}

/// Functional equations, solved at order `n`.
struct Equations {
    n: usize,
}

impl Equations {
    fn x(&self, i: usize) -> Uni {
        Uni::x_pow(i, self.n)
    }

    fn xm(&self, i: usize) -> Multi {
        Multi::monomials(&[(1, i, 0, 0)], self.n)
    }

    fn one(&self) -> Multi {
        Multi::one(self.n)
    }

    fn solve(&self, map: impl Fn(&Uni) -> Uni) -> Res<Uni> {
        solve_fixed_point(Uni::zero(self.n), self.n, |a| Ok(map(a)))
    }

    fn a(&self) -> Res<Uni> {
        let (x, x2) = (self.x(1), self.x(2));
        self.solve(|a| &x2 + &(&x2 * a) + &x * a + &(&x * a) * a)
    }

    fn p(&self) -> Res<Uni> {
        let (x, x2, x3) = (self.x(1), self.x(2), self.x(3));
        self.solve(|p| &x3 + &(&x2 * p) + &x * p + p * p)
    }

    fn m(&self) -> Res<Uni> {
        let (x, x2) = (self.x(1), self.x(2));
        self.solve(|m| &x + &(&x * m) + &x2 * m + &(&x2 * m) * m)
    }

    fn v(&self) -> Res<Uni> {
        let (one, x, x2, x3) = (Uni::one(self.n), self.x(1), self.x(2), self.x(3));
        self.solve(|v| &one + &(&x * v) + &x2 * v + &(&x3 * v) * v)
    }

    fn w(&self) -> Res<Uni> {
        let x = self.x(1);
        self.solve(|w| &x + &(&x * w))
    }

    /// The meander system: `G`, `N` and `S = W G + N`, solved jointly.
    fn gns(&self) -> Res<(Uni, Uni, Uni)> {
        let (m, v, w) = (self.m()?, self.v()?, self.w()?);
        let one = Uni::one(self.n);
        let x2v = &self.x(2) * &v;
        let x2m = &self.x(2) * &m;
        let k = &(&self.x(4) * &v) * &m + &self.x(3) * &v;
        let x = self.x(1);
        let (g, n) = solve_fixed_point((Uni::zero(self.n), Uni::zero(self.n)), self.n, |(g, _)| {
            let n = &x2v + &(&k * g);
            let g = &one + &(&x * g) + &x2m * g + &n;
            Ok((g, n))
        })?;
        let lhs = &g * &(&one - &x - &x2m - &k);
        if let Some(index) = lhs.first_difference(&(&one + &x2v)) {
            return Err(SeriesError::Mismatch {
                id: "G".into(),
                index,
            });
        }
        let s = &w * &g + &n;
        Ok((g, n, s))
    }

    fn a_inc(&self) -> Res<Uni> {
        let (x, x2) = (self.x(1), self.x(2));
        let x3g = Uni::geometric_from(3, self.n);
        self.solve(|a| &(&x2 * a) + &(&x * &(a + &x)) + &x3g * a)
    }

    fn a0(&self) -> Res<Uni> {
        let g = Uni::geometric_from(2, self.n);
        let one = Uni::one(self.n);
        self.solve(|a| &g * &(&one + a))
    }

    fn a_xyz(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let x2yz = &(&self.xm(2) * &v.y) * &v.z;
        let x3y2 = &(&self.xm(3) * &v.y) * &v.y;
        let xy = &self.xm(1) * &v.y;
        v.solve(self.n, |a| {
            let a1 = &one + a;
            let inner = &x2yz + &x3y2 + &x3y2 * a + &xy * &(a - &(&x2yz * &a1));
            &inner * &a1
        })
    }

    fn p_xy(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let x = self.xm(1);
        let x2y = &self.xm(2) * &v.y;
        v.solve(self.n, |p| &(&one + p) * &(&x2y + &(&x * p)))
    }

    fn r_xy(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let x2y = &self.xm(2) * &v.y;
        let xya = &(&self.xm(1) * &v.y) * &Multi::from_univariate(&self.a()?);
        let t = &x2y + &xya;
        v.solve(self.n, |r| &(&one + r) * &t)
    }

    fn c_xy(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let xya = &(&self.xm(1) * &v.y) * &Multi::from_univariate(&self.a()?);
        let t = &self.xm(2) + &xya;
        v.solve(self.n, |c| &(&one + c) * &t)
    }

    fn pk_xy(&self, k: u32, v: &Vars) -> Res<Multi> {
        let k = k as usize;
        let one = self.one();
        let x = self.xm(1);
        let s = (2..=k).fold(Multi::zero(self.n), |acc, i| acc + self.xm(i));
        let xy = &self.xm(k + 1) * &v.y;
        let x2 = self.xm(k + 2);
        v.solve(self.n, |p| {
            let p1 = &one + p;
            let tail = p - &s - &xy * &p1;
            let inner = &s + &xy + &x2 * &p1 + &x * &tail;
            &inner * &p1
        })
    }

    fn z_xyz(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let xy = &self.xm(1) * &v.y;
        let geo = v.fix((&one - &xy).inverse()?);
        let t = &(&(&self.xm(2) * &v.y) * &v.z) + &(&(&self.xm(3) * &(&v.y * &v.y)) * &geo);
        let t = v.fix(t);
        v.solve(self.n, |z| &(&one + z) * &t)
    }

    fn a_inc_xyz(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let z = self.z_xyz(v)?;
        let z1 = &one + &z;
        let x2yz = v.fix(&(&self.xm(2) * &v.y) * &v.z);
        let x3y2 = v.fix(&(&self.xm(3) * &v.y) * &v.y);
        let xy = &self.xm(1) * &v.y;
        let head = v.fix(&x2yz + &x3y2 + &x3y2 * &z);
        let lift = v.fix(&x2yz * &z1);
        v.solve(self.n, |a| &z1 * &(&head + &(&xy * &(a - &lift))))
    }

    fn b_xy(&self, v: &Vars) -> Res<Multi> {
        let x2y = &self.xm(2) * &v.y;
        let x = self.xm(1);
        let gy = &Multi::from_univariate(&Uni::geometric_from(2, self.n)) * &v.y;
        v.solve(self.n, |b| &x2y + &(&x * b) + &gy * b)
    }

    fn r_inc_xy(&self, v: &Vars) -> Res<Multi> {
        let x2y = &self.xm(2) * &v.y;
        let xya = &(&self.xm(1) * &v.y) * &Multi::from_univariate(&self.a_inc()?);
        let gy = &Multi::from_univariate(&Uni::geometric_from(3, self.n)) * &v.y;
        v.solve(self.n, |r| &x2y + &(&x2y * r) + &xya + &gy * r)
    }

    fn u_xy(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let gy = &Multi::from_univariate(&Uni::geometric_from(3, self.n)) * &v.y;
        let t = &self.xm(2) + &gy;
        v.solve(self.n, |u| &(&one + u) * &t)
    }

    fn c_inc_xy(&self, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let ones = v.with(one.clone(), one.clone());
        let u = self.u_xy(v)?;
        let u_at_1 = self.u_xy(&ones)?;
        let u1 = &one + &u_at_1;
        let x2 = self.xm(2);
        let x3u = &self.xm(3) * &u1;
        let x2u = &x2 * &u1;
        let x = self.xm(1);
        // the same equation at y = 1 pins down c(x, 1)
        let c_at_1 = ones.solve(self.n, |c| &u1 * &(&x2 + &x3u + &x * &(c - &x2u)))?;
        let xy = &x * &v.y;
        let c = &(&one + &u) * &(&x2 + &(&x3u * &v.y) + &xy * &(&c_at_1 - &x2u));
        Ok(v.fix(c))
    }

    fn zk_xy(&self, k: u32, v: &Vars) -> Res<Multi> {
        let one = self.one();
        let k = k as usize;
        let t = &self.xm(k + 1) * &v.y + Multi::from_univariate(&Uni::geometric_from(2, self.n))
            - self.xm(k + 1);
        v.solve(self.n, |z| &(&one + z) * &t)
    }

    fn pk_inc_xy(&self, k: u32, v: &Vars) -> Res<Multi> {
        if k == 1 {
            // pyramids of size 1 are the D steps
            let one = self.one();
            return self.a_inc_xyz(&v.with(one, v.y.clone()));
        }
        let k = k as usize;
        let one = self.one();
        let z = self.zk_xy(k as u32, v)?;
        let z1 = &one + &z;
        let x = self.xm(1);
        let xy = &self.xm(k + 1) * &v.y;
        let xyz = v.fix(&xy * &z1);
        let head = v.fix(&self.xm(2) + &xy + &self.xm(k + 2) * &z1);
        let xk = self.xm(k);
        v.solve(self.n, |p| &z1 * &(&head + &(&x * &(&(p - &xk) - &xyz))))
    }

    /// Sum of the popularity series produced by `single(j)` for `j` in
    /// `range`, skipping sizes too large to show up below order `n`.
    fn pyramid_sum(
        &self,
        range: std::ops::RangeInclusive<u32>,
        single: impl Fn(u32) -> Res<Multi>,
    ) -> Res<Uni> {
        let mut acc = Uni::zero(self.n);
        for j in range {
            if j as usize + 1 > self.n {
                break;
            }
            acc = acc + single(j)?.slice(1, 0);
        }
        Ok(acc)
    }
}

/// Which specialization of the up-step grading to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Grading {
    /// `z = 1`: every path, counted by up steps.
    Catalan,
    /// `z = 0`: paths without `D` steps.
    Riordan,
}

impl FromStr for Grading {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "CATALAN" | "CATALAN_GRADING" => Ok(Grading::Catalan),
            "RIORDAN" | "RIORDAN_GRADING" => Ok(Grading::Riordan),
            _ => Err(SeriesError::UnknownId(s.to_string())),
        }
    }
}

/// `1 + A(1, y, z)` with `z` fixed by `grading`, as a series in `y`: the
/// trivariate equation with `x = 1` substituted before solving.
pub fn graded_by_updegree(grading: Grading, order: usize) -> Res<Uni> {
    if order == 0 {
        return Err(SeriesError::BadOrder);
    }
    let one = Uni::one(order);
    let y = Uni::x_pow(1, order);
    let y2 = Uni::x_pow(2, order);
    let yz = match grading {
        Grading::Catalan => y.clone(),
        Grading::Riordan => Uni::zero(order),
    };
    let a = solve_fixed_point(Uni::zero(order), order, |a| {
        let a1 = &one + a;
        let inner = &yz + &y2 + &y2 * a + &y * &(a - &(&yz * &a1));
        Ok(&inner * &a1)
    })?;
    Ok(one + a)
}
