//! Named verification suites. Trial `k` of a suite runs configuration
//! `k mod configs` on the draw stream `(seed, k)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::checks::*;
use super::{max_abs, resample, Draw, Report, Sampler};
use crate::boundary::{
    build_k, f0, genfun_direct, genfun_eval, genfun_residuals, genfun_table, kbar, n_closed, n_first_column,
    n_recurrence_residual, residual_7_6, stochastic_residual, BoundaryParams, GenFunSource, KRoute,
};
use crate::lattice::Weight;
use crate::qseries::identities::{check_qseries_identity, QIdentity};
use crate::qseries::qpoch;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Ybe,
    Reflection,
    Dual,
    Crossing,
    Stochastic,
    Transfer,
    Genfun,
    PhiIdentity,
    Qseries,
    Routes,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Ybe,
        Suite::Reflection,
        Suite::Dual,
        Suite::Crossing,
        Suite::Stochastic,
        Suite::Transfer,
        Suite::Genfun,
        Suite::PhiIdentity,
        Suite::Qseries,
        Suite::Routes,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Reflection => "reflection",
            Suite::Dual => "dual",
            Suite::Crossing => "crossing",
            Suite::Stochastic => "stochastic",
            Suite::Transfer => "transfer",
            Suite::Genfun => "genfun",
            Suite::PhiIdentity => "phi_identity",
            Suite::Qseries => "qseries",
            Suite::Routes => "routes",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|s| s.id() == id)
    }

    /// Number of distinct configurations the trials cycle through.
    pub fn configs(&self) -> usize {
        match self {
            Suite::Ybe => 27,
            Suite::Reflection => REFLECTION.len(),
            Suite::Dual => DUAL.len(),
            Suite::Crossing => 9,
            Suite::Stochastic => 9 + 16,
            Suite::Transfer => TRANSFER.len(),
            Suite::Genfun => 3,
            Suite::PhiIdentity => 1,
            Suite::Qseries => QIdentity::ALL.len(),
            Suite::Routes => 12,
        }
    }
}

/// Knobs that some suites accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest external index in the Φ relation and truncation of the
    /// degenerate reflection check.
    pub max_index: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_index: 3 }
    }
}

fn w(n: u32) -> Weight {
    Weight::new(n).expect("suite weights are positive")
}

// (I, J, route, exploratory)
const REFLECTION: [(u32, u32, KRoute, bool); 19] = [
    (1, 1, KRoute::Seed, false),
    (1, 1, KRoute::Recurrence, false),
    (1, 2, KRoute::Recurrence, false),
    (1, 3, KRoute::Recurrence, false),
    (1, 1, KRoute::Closed, false),
    (1, 2, KRoute::Closed, false),
    (1, 3, KRoute::Closed, false),
    (1, 1, KRoute::Upper, false),
    (1, 2, KRoute::Upper, false),
    (1, 3, KRoute::Upper, false),
    (1, 1, KRoute::Lower, false),
    (1, 2, KRoute::Lower, false),
    (1, 3, KRoute::Lower, false),
    (2, 2, KRoute::Recurrence, false),
    (2, 2, KRoute::Closed, false),
    (2, 1, KRoute::Closed, false),
    (2, 3, KRoute::Closed, true),
    (3, 2, KRoute::Closed, true),
    (2, 2, KRoute::Upper, false),
];

const DUAL: [(u32, u32, KRoute); 9] = [
    (1, 1, KRoute::Seed),
    (1, 1, KRoute::Closed),
    (1, 2, KRoute::Closed),
    (2, 1, KRoute::Closed),
    (2, 2, KRoute::Closed),
    (1, 1, KRoute::Upper),
    (1, 2, KRoute::Upper),
    (2, 2, KRoute::Lower),
    (1, 2, KRoute::Recurrence),
];

// (aux a, aux b, sites)
const TRANSFER: [(u32, u32, &[u32]); 7] =
    [(1, 1, &[1]), (1, 1, &[2]), (1, 2, &[1]), (1, 1, &[1, 1]), (1, 1, &[2, 1]), (1, 2, &[1, 2]), (2, 2, &[2, 2])];

fn route_regime(route: KRoute) -> &'static str {
    match route {
        KRoute::Upper => "upper",
        KRoute::Lower => "lower",
        _ => "general",
    }
}

/// Draws `h, y, ν, μ` and, for the general regime, `t`; records them.
fn boundary_draw(s: &mut Sampler, d: &mut Draw, regime: &str, mu_one: bool) -> Result<BoundaryParams> {
    let h = s.nome();
    let y = s.rational();
    let nu = s.rational();
    let mu = if mu_one { Scalar::one() } else { s.rational() };
    d.push("h", &h);
    d.push("y", &y);
    d.push("nu", &nu);
    d.push("mu", &mu);
    match regime {
        "upper" => BoundaryParams::upper(h, y, mu, nu),
        "lower" => BoundaryParams::lower(h, y, mu, nu),
        _ => {
            let t = s.rational();
            d.push("t", &t);
            BoundaryParams::from_t(h, y, t, mu, nu)
        }
    }
    .map_err(Error::into_draw)
}

fn spectral(s: &mut Sampler, d: &mut Draw, name: &str) -> Scalar {
    let v = s.rational();
    d.push(name, &v);
    v
}

fn nome(s: &mut Sampler, d: &mut Draw) -> Scalar {
    let h = s.nome();
    d.push("h", &h);
    h
}

/// Runs one trial of `suite`.
pub fn run_trial(suite: Suite, opts: &SuiteOptions, seed: u64, trial: u64) -> Report {
    let config = (trial % suite.configs() as u64) as usize;
    // Alternates between μ = 1 and generic μ on successive passes over the
    // configurations.
    let mu_one = (trial / suite.configs() as u64).is_multiple_of(2);
    match suite {
        Suite::Ybe => {
            let (a, b, c) = (config / 9 + 1, (config / 3) % 3 + 1, config % 3 + 1);
            let ws = [w(a as u32), w(b as u32), w(c as u32)];
            resample(&format!("ybe({a},{b},{c})"), seed, trial, |s, d| {
                let h = nome(s, d);
                let (x, y, z) = (spectral(s, d, "x"), spectral(s, d, "y"), spectral(s, d, "z"));
                ybe_residual(ws, &x, &y, &z, &h)
            })
        }
        Suite::Reflection => {
            let (i, j, route, exploratory) = REFLECTION[config];
            let id = format!("reflection({i},{j},{})", route.id());
            resample(&id, seed, trial, |s, d| {
                let bp = boundary_draw(s, d, route_regime(route), mu_one)?;
                let (x, y) = (spectral(s, d, "x"), spectral(s, d, "y"));
                let kx = build_k(route, w(i), &bp.with_spectral(x.clone())?)?;
                let ky = build_k(route, w(j), &bp.with_spectral(y.clone())?)?;
                let mut out = vec![reflection_residual(&kx, &ky, &x, &y, &bp.h)?];
                if bp.mu.is_one() && route != KRoute::Seed {
                    out.push(stochastic_residual(&kx));
                    out.push(stochastic_residual(&ky));
                }
                out.push(max_abs(s_stochastic_all(&[(i, j, x.checked_div(&y)?), (j, i, &x * &y)], &bp.h)?));
                Ok(max_abs(out))
            })
            .exploratory(exploratory)
        }
        Suite::Dual => {
            let (i, j, route) = DUAL[config];
            resample(&format!("dual({i},{j},{})", route.id()), seed, trial, |s, d| {
                let bp = boundary_draw(s, d, route_regime(route), mu_one)?;
                let (x, y) = (spectral(s, d, "x"), spectral(s, d, "y"));
                let kx = kbar(route, w(i), &bp, &x)?;
                let ky = kbar(route, w(j), &bp, &y)?;
                dual_reflection_residual(&kx, &ky, &x, &y, &bp.h)
            })
        }
        Suite::Crossing => {
            let (i, j) = (config / 3 + 1, config % 3 + 1);
            resample(&format!("crossing({i},{j})"), seed, trial, |s, d| {
                let h = nome(s, d);
                let l = spectral(s, d, "lambda");
                Ok(max_abs([
                    crossing_residual(w(i as u32), w(j as u32), &l, &h)?,
                    unitarity_residual(w(i as u32), w(j as u32), &l, &h)?,
                ]))
            })
        }
        Suite::Stochastic if config < 9 => {
            let (i, j) = (config / 3 + 1, config % 3 + 1);
            resample(&format!("stochastic_s({i},{j})"), seed, trial, |s, d| {
                let h = nome(s, d);
                let l = spectral(s, d, "lambda");
                s_stochastic_residual(w(i as u32), w(j as u32), &l, &h)
            })
        }
        Suite::Stochastic => {
            let k = config - 9;
            let spin = (k / 4 + 1) as u32;
            let route = [KRoute::Recurrence, KRoute::Closed, KRoute::Upper, KRoute::Lower][k % 4];
            resample(&format!("stochastic_k({spin},{})", route.id()), seed, trial, |s, d| {
                let bp = boundary_draw(s, d, route_regime(route), true)?;
                Ok(stochastic_residual(&build_k(route, w(spin), &bp)?))
            })
        }
        Suite::Transfer => {
            let (a, b, sites) = TRANSFER[config];
            let id = format!("transfer({a},{b};{sites:?})");
            resample(&id, seed, trial, |s, d| {
                let bp = boundary_draw(s, d, "general", mu_one)?;
                let (x, y) = (spectral(s, d, "x"), spectral(s, d, "y"));
                let mut z = Vec::new();
                for n in 0..sites.len() {
                    z.push(spectral(s, d, &format!("z{}", n + 1)));
                }
                let chain = Chain { sites: sites.iter().map(|&v| w(v)).collect(), z };
                let mut out = vec![transfer_commutator_residual([w(a), w(b)], &chain, &x, &y, KRoute::Closed, &bp)?];
                // The ingredients of the commutativity argument on the same draw.
                for aux in [a, b] {
                    for (site, zk) in chain.sites.iter().zip(&chain.z) {
                        for sp in [&x, &y] {
                            out.push(unitarity_residual(w(aux), *site, &sp.checked_div(zk)?, &bp.h)?);
                        }
                    }
                }
                Ok(max_abs(out))
            })
        }
        Suite::Genfun => {
            let spin = w(config as u32 + 1);
            resample(&format!("genfun({})", config + 1), seed, trial, |s, d| {
                let bp = boundary_draw(s, d, "general", mu_one)?;
                let (u, v) = (spectral(s, d, "u"), spectral(s, d, "v"));
                genfun_max_residual(spin, &bp, &u, &v)
            })
        }
        Suite::PhiIdentity => {
            let bound = opts.max_index;
            resample(&format!("phi_identity(<= {bound})"), seed, trial, |s, d| {
                let q = s.nome();
                d.push("q", &q);
                let p = PhiIdentityPoint {
                    x: spectral(s, d, "x"),
                    y: spectral(s, d, "y"),
                    z: spectral(s, d, "z"),
                    u: spectral(s, d, "u"),
                    v: spectral(s, d, "v"),
                    q,
                };
                let (xb, yb) = (spectral(s, d, "xbar"), spectral(s, d, "ybar"));
                let (x, y) = (p.x.clone(), p.y.clone());
                Ok(max_abs([
                    phi_identity_max_residual(bound as i64, &p)?,
                    degenerate_reflection_residual(&x, &y, &xb, &yb, &p, bound)?,
                ]))
            })
        }
        Suite::Qseries => check_qseries_identity(QIdentity::ALL[config], seed, trial),
        Suite::Routes => {
            let spin = w((config / 3 + 1) as u32);
            let regime = ["general", "upper", "lower"][config % 3];
            resample(&format!("routes({},{regime})", spin.get()), seed, trial, |s, d| {
                let bp = boundary_draw(s, d, regime, true)?;
                route_max_residual(spin, &bp, regime)
            })
        }
    }
}

fn s_stochastic_all(points: &[(u32, u32, Scalar)], h: &Scalar) -> Result<Vec<Scalar>> {
    points.iter().map(|(i, j, l)| s_stochastic_residual(w(*i), w(*j), l, h)).collect()
}

/// Route equality in one regime at `μ = 1`, plus stochasticity and the
/// defining relations of every route built.
pub fn route_max_residual(spin: Weight, bp: &BoundaryParams, regime: &str) -> Result<Scalar> {
    let rec = build_k(KRoute::Recurrence, spin, bp)?;
    let other = match regime {
        "upper" => KRoute::Upper,
        "lower" => KRoute::Lower,
        _ => KRoute::Closed,
    };
    let closed = build_k(other, spin, bp)?;
    let mut out = vec![
        rec.matrix().max_abs_diff(closed.matrix()),
        stochastic_residual(&rec),
        stochastic_residual(&closed),
        k_defining_max_residual(spin, bp, other)?,
    ];
    if other == KRoute::Closed {
        let n = n_closed(spin, bp)?;
        for j in 0..spin.dim() {
            out.push(n_first_column(spin, j, bp)? - n.get(j, 0));
        }
        if spin.get() == 1 {
            let seed = build_k(KRoute::Seed, spin, bp)?.normalized()?;
            out.push(seed.matrix().max_abs_diff(rec.matrix()));
        }
    }
    Ok(max_abs(out))
}

/// Every generating-function relation at `(u, v)`.
pub fn genfun_max_residual(spin: Weight, bp: &BoundaryParams, u: &Scalar, v: &Scalar) -> Result<Scalar> {
    let ji = spin.as_i64();
    let t = bp.t()?;
    let qq = bp.q() * bp.q();
    let n = n_closed(spin, bp)?;
    let f = genfun_eval(u, v, spin, bp)?.value;
    let mut out: Vec<Scalar> = Vec::new();
    out.extend(genfun_residuals(u, v, spin, bp, GenFunSource::ClosedForm)?);
    out.extend(genfun_residuals(u, v, spin, bp, GenFunSource::CoefficientTable)?);
    out.push(&f - genfun_table(u, v, &n)?);
    out.push(&f - genfun_eval(v, u, spin, bp)?.value);
    out.push(&f - genfun_direct(u, v, spin, bp)?);
    let base = -(v * t * bp.h.pow(-4 * ji)?);
    out.push(genfun_eval(&(&qq * t), v, spin, bp)?.value - qpoch(&base, &qq, spin.get()));
    out.push(genfun_eval(u, &Scalar::zero(), spin, bp)?.value - f0(u, spin, bp)?);
    out.push(residual_7_6(u, spin, bp)?);
    out.push(n_recurrence_residual(&n, bp)?);
    Ok(max_abs(out))
}

/// Identity string and configuration count, for listings.
pub fn describe(suite: Suite) -> String {
    format!("{} ({} configurations)", suite.id(), suite.configs())
}
