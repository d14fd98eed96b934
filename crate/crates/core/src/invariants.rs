//! K-groups and trace range of the simple quotient `A_θ(α,β,γ,δ,ε)`, the reduced
//! parameter form and a necessary-condition isomorphism screen.
//!
//! `θ` is symbolic: it is an integer multiple `s·θ0` of a fixed irrational `θ0`
//! whose arithmetic class is recorded in [`ThetaMode`]. Equality of trace
//! modules then reduces to comparing integer coefficients in the basis
//! `1, θ0, θ0²`.

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::group::GroupParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroupDescriptor {
    #[serde(rename = "rank")]
    pub free_rank: u32,
    /// Orders of the cyclic torsion factors; trivial factors are omitted.
    #[serde(rename = "torsion")]
    pub torsion_orders: Vec<i64>,
}

impl AbelianGroupDescriptor {
    pub fn new(free_rank: u32, torsion: impl IntoIterator<Item = i64>) -> Self {
        Self {
            free_rank,
            torsion_orders: torsion.into_iter().filter(|&t| t.abs() >= 2).map(i64::abs).collect(),
        }
    }
}

impl std::fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for t in &self.torsion_orders {
            write!(f, " + Z_{t}")?;
        }
        Ok(())
    }
}

/// `K0 = K1 = Z^6 ⊕ Z_α`.
pub fn k_groups(params: &GroupParams) -> (AbelianGroupDescriptor, AbelianGroupDescriptor) {
    let k = AbelianGroupDescriptor::new(6, [params.alpha()]);
    (k.clone(), k)
}

/// The trace range `Z + Z ρθ + Z gd θ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TraceLattice {
    pub rho: i64,
    #[serde(rename = "gamma_delta")]
    pub gd: i64,
}

pub fn trace_lattice(params: &GroupParams) -> TraceLattice {
    TraceLattice {
        rho: gcd_all(&[params.gamma(), params.delta(), params.epsilon()]),
        gd: params.gamma() * params.delta(),
    }
}

/// Both lattices built on the same non-quartic `θ`.
pub fn lattices_equal_fixed_theta(l1: &TraceLattice, l2: &TraceLattice) -> bool {
    l1.rho == l2.rho && l1.gd == l2.gd
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThetaMode {
    /// Not a root of any integer polynomial of degree at most 4.
    SymbolicNonQuartic,
    /// Not a root of any integer polynomial of degree at most 2.
    SymbolicNonQuadratic,
    Rational { p: i64, q: i64 },
}

impl ThetaMode {
    pub fn is_symbolic(self) -> bool {
        !matches!(self, ThetaMode::Rational { .. })
    }
}

/// `θ = multiple · θ0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theta {
    pub mode: ThetaMode,
    pub multiple: i64,
}

impl Theta {
    pub fn symbolic(mode: ThetaMode) -> Self {
        Self { mode, multiple: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraParams {
    pub theta: Theta,
    pub params: GroupParams,
}

fn require_symbolic(theta: &Theta) -> Result<()> {
    if let ThetaMode::Rational { p, q } = theta.mode {
        return Err(Error::UnsupportedRegime(format!(
            "θ = {p}/{q} is rational; use the root-of-unity quotient analysis"
        )));
    }
    if theta.multiple == 0 {
        return Err(Error::InvalidParams("θ multiple must be nonzero".into()));
    }
    Ok(())
}

/// `A_θ(α,β,γ,δ,ε) ≅ A_{ρθ}(α,0,γ/ρ,δ/ρ,ε/ρ)` with `ρ = gcd{γ,δ,ε}`.
pub fn reduce_algebra(a: &AlgebraParams) -> Result<AlgebraParams> {
    require_symbolic(&a.theta)?;
    let p = &a.params;
    let rho = gcd_all(&[p.gamma(), p.delta(), p.epsilon()]);
    let multiple = a
        .theta
        .multiple
        .checked_mul(rho)
        .ok_or(Error::Overflow("reduced θ multiple"))?;
    Ok(AlgebraParams {
        theta: Theta {
            mode: a.theta.mode,
            multiple,
        },
        params: GroupParams::new(p.alpha(), 0, p.gamma() / rho, p.delta() / rho, p.epsilon() / rho)?,
    })
}

/// A coefficient matrix: row `i` holds the `θ0` and `θ0²` coefficients of the
/// `i`-th trace generator (`θ` and `γδθ²`).
pub type CoefficientMatrix = [[i64; 2]; 2];

/// For non-quadratic `θ0`, `Z + Zθ_2 + Z g_2θ_2² = Z + Zθ_1 + Z g_1θ_1²` iff
/// there is `S ∈ GL(2,Z)` with `(θ_2, g_2θ_2²)ᵀ = S (θ_1, g_1θ_1²)ᵀ mod Z²`.
/// Since `1, θ0, θ0²` are independent over `Q`, the mod-`Z²` part drops out
/// and the condition is `C2 = S·C1`. Returns `S` when it exists.
pub fn gl2z_relating(c1: &CoefficientMatrix, c2: &CoefficientMatrix) -> Result<Option<[[i64; 2]; 2]>> {
    let det = i128::from(c1[0][0]) * i128::from(c1[1][1]) - i128::from(c1[0][1]) * i128::from(c1[1][0]);
    if det == 0 {
        return Err(Error::InvalidParams("coefficient matrix is singular".into()));
    }
    let det = i64::try_from(det).map_err(|_| Error::Overflow("coefficient determinant"))?;
    // C1^{-1} = adj(C1) / det
    let adj = [[c1[1][1], -c1[0][1]], [-c1[1][0], c1[0][0]]];
    let mut s = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let num = Ratio::new(
                c2[i][0] as i128 * adj[0][j] as i128 + c2[i][1] as i128 * adj[1][j] as i128,
                det as i128,
            );
            if !num.is_integer() {
                return Ok(None);
            }
            s[i][j] = i64::try_from(num.to_integer()).map_err(|_| Error::Overflow("S entry"))?;
        }
    }
    let ds = i128::from(s[0][0]) * i128::from(s[1][1]) - i128::from(s[0][1]) * i128::from(s[1][0]);
    Ok((ds.abs() == 1).then_some(s))
}

fn coefficients(a: &AlgebraParams) -> Result<CoefficientMatrix> {
    let t = i128::from(a.theta.multiple);
    let gd = i128::from(a.params.gamma()) * i128::from(a.params.delta());
    let sq = i64::try_from(gd * t * t).map_err(|_| Error::Overflow("γδθ² coefficient"))?;
    Ok([[a.theta.multiple, 0], [0, sq]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenFailure {
    KGroups,
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScreenVerdict {
    NotIsomorphic { reason: ScreenFailure, detail: String },
    /// No invariant separates the two; this is never a proof of isomorphism.
    PossiblyIsomorphic,
}

/// Reduces both algebras, then compares K-groups and trace ranges (with
/// `θ ~ -θ`), reporting the first invariant that differs.
pub fn iso_screen(a1: &AlgebraParams, a2: &AlgebraParams) -> Result<ScreenVerdict> {
    require_symbolic(&a1.theta)?;
    require_symbolic(&a2.theta)?;
    if a1.theta.mode != a2.theta.mode {
        return Err(Error::InvalidParams(
            "both θ must be multiples of the same θ0 with one arithmetic class".into(),
        ));
    }
    let (r1, r2) = (reduce_algebra(a1)?, reduce_algebra(a2)?);
    let (k1, _) = k_groups(&r1.params);
    let (k2, _) = k_groups(&r2.params);
    if k1 != k2 {
        return Ok(ScreenVerdict::NotIsomorphic {
            reason: ScreenFailure::KGroups,
            detail: format!("K0 = {k1} vs {k2}"),
        });
    }
    let (c1, c2) = (coefficients(&r1)?, coefficients(&r2)?);
    let same_trace = match r1.theta.mode {
        ThetaMode::SymbolicNonQuartic => {
            c1[0][0].abs() == c2[0][0].abs() && c1[1][1] == c2[1][1]
        }
        _ => gl2z_relating(&c1, &c2)?.is_some(),
    };
    if !same_trace {
        return Ok(ScreenVerdict::NotIsomorphic {
            reason: ScreenFailure::Trace,
            detail: format!(
                "Z + Z({})θ0 + Z({})θ0² vs Z + Z({})θ0 + Z({})θ0²",
                c1[0][0], c1[1][1], c2[0][0], c2[1][1]
            ),
        });
    }
    Ok(ScreenVerdict::PossiblyIsomorphic)
}
