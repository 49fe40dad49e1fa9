use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::ShockSpec;
use crate::error::{QError, Result};
use crate::qcore::{rat, QBase, Real};

/// The six published shock profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

/// Parameters of one figure.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureParams {
    pub q: i64,
    pub nu: i64,
    pub offset: i64,
    pub ks: Vec<i64>,
    pub t: i64,
    pub x_range: (i64, i64),
    pub points: usize,
    pub caption: &'static str,
}

impl FigureId {
    pub fn all() -> [FigureId; 6] {
        use FigureId::*;
        [Fig1, Fig2, Fig3, Fig4, Fig5, Fig6]
    }

    pub fn params(self) -> FigureParams {
        use FigureId::*;
        let (offset, ks, t, caption) = match self {
            Fig1 => (10, vec![1, -1], -2, "q-shock, k = (1, -1), offset 10, t = -2"),
            Fig2 => (10, vec![1, -1], 0, "q-shock, k = (1, -1), offset 10, t = 0"),
            Fig3 => (10, vec![1, -1], 5, "q-shock, k = (1, -1), offset 10, t = 5"),
            Fig4 => (0, vec![1, -1, 2, -2], -10, "q-multi-shock, k = (1, -1, 2, -2), t = -10"),
            Fig5 => (0, vec![1, -1, 2, -2], 0, "q-multi-shock, k = (1, -1, 2, -2), t = 0"),
            Fig6 => (0, vec![1, -1, 2, -2], 7, "q-multi-shock, k = (1, -1, 2, -2), t = 7"),
        };
        FigureParams { q: 10, nu: 1, offset, ks, t, x_range: (-50, 50), points: 2001, caption }
    }

    pub fn spec(self, prec: usize) -> Result<ShockSpec> {
        let p = self.params();
        let ks: Vec<f64> = p.ks.iter().map(|&k| k as f64).collect();
        ShockSpec::unit(p.offset as f64, &ks, &QBase::rational(p.q, 1)?, p.nu as f64, prec)
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = FigureId::all().iter().position(|g| g == self).expect("listed") + 1;
        write!(f, "fig{n}")
    }
}

impl FromStr for FigureId {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::all()
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| QError::Domain(format!("unknown figure '{s}', expected fig1 to fig6")))
    }
}

/// `(x, u)` samples of a figure on its uniform grid, exact grid points.
pub fn figure_samples(id: FigureId, prec: usize) -> Result<Vec<(Real, Real)>> {
    let p = id.params();
    let u = id.spec(prec)?.velocity()?;
    let t = Real::from_i64(p.t, prec);
    let (lo, hi) = p.x_range;
    let steps = (p.points - 1) as i64;
    (0..p.points as i64)
        .into_par_iter()
        .map(|i| {
            // lo + (hi - lo) i / steps, exactly
            let x = Real::from_rational(&(rat(lo, 1) + rat((hi - lo) * i, steps as u64)), prec);
            let v = u.u(&x, &t)?;
            Ok((x, v))
        })
        .collect()
}
