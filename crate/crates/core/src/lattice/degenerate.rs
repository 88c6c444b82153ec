use alloc::format;

use super::{qpow, BlockTensor, Weight};
use crate::qseries::phi_weight;
use crate::{Error, Result, Scalar};

/// Special spectral points where the stochastic S-matrix collapses to a
/// single Φ weight per entry.
///
/// For integer weights the first form holds only when `I ≤ J` and the
/// second only when `I ≥ J`; outside that range the single-Φ expression is
/// not stochastic (a whole column vanishes) and differs from the limit of
/// the general S-matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// `λ = q^{(J-I)/2}`: `Φ_{q²}(i | j'; q^{-2I}, q^{-2J})`.
    AtQHalfJmI,
    /// `λ = q^{(I-J)/2}`: `q^{2Ij - 2Ji'} Φ_{q²}(j | i'; q^{-2J}, q^{-2I})`.
    AtQHalfImJ,
    /// `λ = q^{(I+J)/2}`: `Φ_{q²}(i | i+j; q^{-2I}, q^{-2I-2J})`.
    AtQHalfIpJ,
}

impl DegenerateKind {
    pub const ALL: [DegenerateKind; 3] =
        [DegenerateKind::AtQHalfJmI, DegenerateKind::AtQHalfImJ, DegenerateKind::AtQHalfIpJ];

    pub fn id(&self) -> &'static str {
        match self {
            DegenerateKind::AtQHalfJmI => "at_q_half_JmI",
            DegenerateKind::AtQHalfImJ => "at_q_half_ImJ",
            DegenerateKind::AtQHalfIpJ => "at_q_half_IpJ",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        DegenerateKind::ALL.into_iter().find(|k| k.id() == id)
    }

    /// Whether the single-Φ form is valid for these weights.
    pub fn applies(&self, i_w: Weight, j_w: Weight) -> bool {
        match self {
            DegenerateKind::AtQHalfJmI => i_w <= j_w,
            DegenerateKind::AtQHalfImJ => i_w >= j_w,
            DegenerateKind::AtQHalfIpJ => true,
        }
    }

    /// The spectral point `λ = h^k` this kind describes.
    pub fn lambda(&self, i_w: Weight, j_w: Weight, h: &Scalar) -> Result<Scalar> {
        let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
        h.pow(match self {
            DegenerateKind::AtQHalfJmI => cj - ci,
            DegenerateKind::AtQHalfImJ => ci - cj,
            DegenerateKind::AtQHalfIpJ => ci + cj,
        })
    }
}

pub fn build_s_degenerate(kind: DegenerateKind, i_w: Weight, j_w: Weight, h: &Scalar) -> Result<BlockTensor> {
    super::check_nome(h)?;
    if !kind.applies(i_w, j_w) {
        return Err(Error::InvalidArgument(format!(
            "{} needs {} (got I = {}, J = {})",
            kind.id(),
            if kind == DegenerateKind::AtQHalfJmI { "I ≤ J" } else { "I ≥ J" },
            i_w.get(),
            j_w.get()
        )));
    }
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    let qq = h.pow(4)?;
    let q_2i = qpow(h, -2 * ci)?;
    let q_2j = qpow(h, -2 * cj)?;
    let q_2ij = qpow(h, -2 * ci - 2 * cj)?;
    BlockTensor::try_from_fn(i_w, j_w, |i, j, ip, jp| match kind {
        DegenerateKind::AtQHalfJmI => phi_weight(i as i64, jp, &q_2i, &q_2j, &qq),
        DegenerateKind::AtQHalfImJ => {
            let pre = qpow(h, 2 * ci * j as i64 - 2 * cj * ip as i64)?;
            Ok(pre * phi_weight(j as i64, ip, &q_2j, &q_2i, &qq)?)
        }
        DegenerateKind::AtQHalfIpJ => phi_weight(i as i64, i + j, &q_2i, &q_2ij, &qq),
    })
    .map_err(Error::into_parameter)
}
