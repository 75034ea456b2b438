//! Spine synthesis, order bounds and minimality certificates.
//!
//! Every bound here is computed in integer arithmetic. A ceiling or floor of
//! `(a + sqrt(d)) / k` is evaluated through the integer square root of `d`:
//! `ceil((a + sqrt d) / k) = ceil((a + ceil_sqrt d) / k)` and the same for
//! floors with `isqrt`, both exact for every integer `a` and `k > 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{complete_betti, complete_graph, GraphError};
use crate::par::Execution;
use crate::recipe::SpineRecipe;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("chromatic number {n} not achievable at genus {genus}: needs genus at least {betti}")]
    ChromaticUnreachable { genus: u64, n: u64, betti: u64 },
    #[error("order {p} too small for genus {genus}: spine cycle rank is at most {betti}")]
    OrderTooSmall { genus: u64, p: u64, betti: u64 },
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: u64, got: u64 },
    #[error("cannot remove {m} edges from K_{p}: its cycle rank is {betti}")]
    DeletionOutOfRange { p: u64, m: u64, betti: u64 },
    #[error("order {alpha0} is below the lower bound {bound} for genus {genus}")]
    BelowLowerBound { genus: u64, alpha0: u64, bound: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn ceil_sqrt(d: u128) -> u128 {
    let r = d.isqrt();
    if r * r == d {
        r
    } else {
        r + 1
    }
}

fn ceil_div(a: u128, k: u128) -> u128 {
    a.div_ceil(k)
}

/// Lower bound on the order of any quadrangulation of the genus `g` surface.
///
/// For `g = 0` the quadratic bound is vacuous and the sphere minimum 4 is
/// returned.
pub fn min_order_lower_bound(g: u64) -> u64 {
    if g == 0 {
        return 4;
    }
    let d = 32 * g as u128 - 7;
    ceil_div(5 + ceil_sqrt(d), 2) as u64
}

/// Order of a minimal spinal quadrangulation of genus `g`; always even.
pub fn spinal_min_order(g: u64) -> u64 {
    2 * ceil_div(3 + ceil_sqrt(8 * g as u128 + 1), 2) as u64
}

/// Largest `n` with `beta(K_n) <= g`.
pub fn max_chromatic_for_genus(g: u64) -> u64 {
    ((3 + (8 * g as u128 + 1).isqrt()) / 2) as u64
}

/// Exact minimal order for genus `g >= 3` when the two bounds meet.
///
/// Returns `Ok(None)` when the ceiling of the lower curve and the floor of
/// the upper curve differ.
pub fn corollary5_min_order(g: u64) -> Result<Option<u64>, SynthesisError> {
    if g < 3 {
        return Err(SynthesisError::TooSmall { what: "genus", min: 3, got: g });
    }
    let (a, b) = exact_order_bounds(g);
    Ok((a == b).then_some(2 * a))
}

/// `(ceil a(g), floor b(g))` for `g >= 1`.
pub fn exact_order_bounds(g: u64) -> (u64, u64) {
    let g = g as u128;
    let a = ceil_div(3 + ceil_sqrt(8 * g + 1), 2);
    let b = (7 + (32 * g - 15).isqrt()) / 4;
    (a as u64, b as u64)
}

/// Genus of a quadrilateral embedding of `K_n`, for `n ≡ 5 (mod 8)`.
pub fn kn_quad_genus(n: u64) -> Option<u64> {
    (n % 8 == 5).then(|| 1 + n * (n - 5) / 8)
}

/// Spine with cycle rank `g` and chromatic number `n`.
pub fn spine_for_chromatic(g: u64, n: u64) -> Result<SpineRecipe, SynthesisError> {
    if n < 2 {
        return Err(SynthesisError::TooSmall { what: "chromatic number", min: 2, got: n });
    }
    let betti = complete_betti(n);
    if g < betti {
        return Err(SynthesisError::ChromaticUnreachable { genus: g, n, betti });
    }
    let mut recipe = SpineRecipe::complete(n as usize);
    if g > betti {
        recipe.glued_ladder_rungs = (g - betti + 1) as usize;
        recipe.glue_edge = Some((0, 1));
    }
    Ok(recipe)
}

/// Spine on `p` vertices with cycle rank `g`; its interlacement has order `2p`.
pub fn spine_for_order(g: u64, p: u64) -> Result<SpineRecipe, SynthesisError> {
    if p < 2 {
        return Err(SynthesisError::TooSmall { what: "spine order", min: 2, got: p });
    }
    let betti = complete_betti(p);
    if g > betti {
        return Err(SynthesisError::OrderTooSmall { genus: g, p, betti });
    }
    let m = (betti - g) as usize;
    let removed_edges = complete_graph(p as usize)?.non_tree_edges().into_iter().take(m).collect();
    Ok(SpineRecipe { removed_edges, ..SpineRecipe::complete(p as usize) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MinimalCertified,
    NotMinimal,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub genus: u64,
    pub alpha0: u64,
    pub eq1_lower_bound: u64,
    pub spinal_min_order: u64,
    pub verdict: Verdict,
    pub reason: String,
}

/// `2p - 1 < (5 + sqrt(32g - 7)) / 2 <= 2p`, i.e. `2p` is the lower bound.
pub fn certificate_chain_holds(p: u64, g: u64) -> bool {
    if g == 0 {
        return false;
    }
    let d = 32 * g as i128 - 7;
    let (lo, hi) = (4 * p as i128 - 7, 4 * p as i128 - 5);
    (lo < 0 || lo * lo < d) && hi >= 0 && d <= hi * hi
}

/// Certifies a spine `K_p` minus `m` edges, whose interlacement has order
/// `alpha0`.
pub fn minimality_certificate(p: u64, m: u64, alpha0: u64) -> Result<MinimalityReport, SynthesisError> {
    let betti = complete_betti(p);
    if m > betti {
        return Err(SynthesisError::DeletionOutOfRange { p, m, betti });
    }
    let g = betti - m;
    let chain = certificate_chain_holds(p, g);
    debug_assert_eq!(chain, p >= 4 * (m + 1), "certificate chain and shortcut disagree");
    let mut report = assess_order(g, alpha0)?;
    if alpha0 == 2 * p && chain {
        report.verdict = Verdict::MinimalCertified;
        report.reason = format!("p = {p} >= 4(m + 1) = {}: order 2p meets the lower bound", 4 * (m + 1));
    } else if report.verdict == Verdict::Inconclusive {
        report.reason = format!("p = {p} < 4(m + 1) = {}: sufficient condition fails", 4 * (m + 1));
    }
    Ok(report)
}

/// Judges an order `alpha0` for a quadrangulation of genus `g` from the
/// bounds alone.
pub fn assess_order(g: u64, alpha0: u64) -> Result<MinimalityReport, SynthesisError> {
    let lower = min_order_lower_bound(g);
    let spinal = spinal_min_order(g);
    if alpha0 < lower {
        return Err(SynthesisError::BelowLowerBound { genus: g, alpha0, bound: lower });
    }
    let (verdict, reason) = if g >= 1 && alpha0 == lower {
        (Verdict::MinimalCertified, format!("order {alpha0} equals the lower bound"))
    } else if alpha0 > spinal {
        (Verdict::NotMinimal, format!("a spinal quadrangulation of order {spinal} exists"))
    } else {
        (Verdict::Inconclusive, format!("order lies in [{lower}, {spinal}] without a matching bound"))
    };
    Ok(MinimalityReport { genus: g, alpha0, eq1_lower_bound: lower, spinal_min_order: spinal, verdict, reason })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnQuadHint {
    pub n: u64,
    pub genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub genus: u64,
    pub max_chromatic: u64,
    /// Set when `K_n` with `n ≡ 5 (mod 8)` quadrangulates this surface.
    pub kn_quad_genus_hint: Option<KnQuadHint>,
    pub coverage_note: String,
}

/// The `n ≡ 5 (mod 8)` with `1 + n(n - 5)/8 = g`, if any.
fn kn_quad_order(g: u64) -> Option<u64> {
    if g == 0 {
        return None;
    }
    // n^2 - 5n - 8(g - 1) = 0
    let disc = 25 + 32 * (g as u128 - 1);
    let r = disc.isqrt();
    if r * r != disc || !(5 + r).is_multiple_of(2) {
        return None;
    }
    let n = ((5 + r) / 2) as u64;
    (n % 8 == 5).then_some(n)
}

pub fn spectrum_report(g: u64) -> SpectrumReport {
    let max_chromatic = max_chromatic_for_genus(g);
    let hint = kn_quad_order(g).map(|n| KnQuadHint { n, genus: g });
    let coverage_note = match hint {
        Some(h) => format!(
            "K_{} quadrangulates this surface; spines reach chromatic numbers 2..={max_chromatic}, about half of 2..={}",
            h.n, h.n
        ),
        None => format!("spines reach chromatic numbers 2..={max_chromatic}"),
    };
    SpectrumReport { genus: g, max_chromatic, kn_quad_genus_hint: hint, coverage_note }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub g: u64,
    pub eq1_lower_bound: u64,
    pub spinal_min_order: u64,
    pub corollary5_exact: Option<u64>,
    pub max_chromatic: u64,
}

pub const ATLAS_HEADER: &str = "g,eq1_lower_bound,spinal_min_order,corollary5_exact,max_chromatic";

pub fn atlas_row(g: u64) -> AtlasRow {
    AtlasRow {
        g,
        eq1_lower_bound: min_order_lower_bound(g),
        spinal_min_order: spinal_min_order(g),
        corollary5_exact: corollary5_min_order(g).ok().flatten(),
        max_chromatic: max_chromatic_for_genus(g),
    }
}

/// Rows for `g = 0..=max_genus`, in order.
pub fn atlas(max_genus: u64, exec: Execution) -> Vec<AtlasRow> {
    exec.map((0..=max_genus).collect(), atlas_row)
}

pub fn atlas_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::with_capacity(24 * (rows.len() + 1));
    out.push_str(ATLAS_HEADER);
    out.push('\n');
    for r in rows {
        let c5 = r.corollary5_exact.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", r.g, r.eq1_lower_bound, r.spinal_min_order, c5, r.max_chromatic));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_number;

    #[test]
    fn bound_values() {
        let lower: Vec<u64> = [0, 1, 2, 55].map(min_order_lower_bound).to_vec();
        assert_eq!(lower, [4, 5, 7, 24]);
        let spinal: Vec<u64> = [0, 1, 2, 55].map(spinal_min_order).to_vec();
        assert_eq!(spinal, [4, 6, 8, 24]);
        let chi: Vec<u64> = [0, 1, 3, 55].map(max_chromatic_for_genus).to_vec();
        assert_eq!(chi, [2, 3, 4, 12]);
    }

    #[test]
    fn exact_min_order() {
        assert_eq!(corollary5_min_order(3), Ok(Some(8)));
        assert_eq!(corollary5_min_order(4), Ok(None));
        assert_eq!(exact_order_bounds(4), (5, 4));
        assert_eq!(corollary5_min_order(5), Ok(None));
        assert_eq!(corollary5_min_order(6), Ok(Some(10)));
        assert!(corollary5_min_order(2).is_err());
    }

    #[test]
    fn chromatic_spines() {
        let r = spine_for_chromatic(3, 4).unwrap();
        assert_eq!(r, SpineRecipe::complete(4));
        let r = spine_for_chromatic(5, 4).unwrap();
        let g = r.materialize().unwrap();
        assert_eq!((g.betti().unwrap(), chromatic_number(&g).unwrap()), (5, 4));
        assert!(matches!(spine_for_chromatic(2, 4), Err(SynthesisError::ChromaticUnreachable { .. })));
    }

    #[test]
    fn order_spines() {
        assert_eq!(spine_for_order(55, 12).unwrap(), SpineRecipe::complete(12));
        let r = spine_for_order(53, 12).unwrap();
        assert_eq!(r.removed_edges.len(), 2);
        assert_eq!(r.materialize().unwrap().betti().unwrap(), 53);
        assert!(matches!(spine_for_order(7, 4), Err(SynthesisError::OrderTooSmall { .. })));
    }

    #[test]
    fn certificates() {
        let r = minimality_certificate(12, 2, 24).unwrap();
        assert_eq!((r.genus, r.verdict), (53, Verdict::MinimalCertified));
        let r = minimality_certificate(12, 3, 24).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = minimality_certificate(4, 0, 8).unwrap();
        assert_eq!((r.genus, r.verdict), (3, Verdict::MinimalCertified));
        assert!(minimality_certificate(4, 4, 8).is_err());
        // K_3 minus its one cycle edge: genus 0, never certified
        assert_eq!(minimality_certificate(3, 1, 6).unwrap().verdict, Verdict::NotMinimal);
    }

    #[test]
    fn assessments() {
        assert_eq!(assess_order(1, 5).unwrap().verdict, Verdict::MinimalCertified);
        assert_eq!(assess_order(1, 6).unwrap().verdict, Verdict::Inconclusive);
        assert_eq!(assess_order(1, 7).unwrap().verdict, Verdict::NotMinimal);
        assert_eq!(assess_order(0, 4).unwrap().verdict, Verdict::Inconclusive);
        assert!(assess_order(2, 6).is_err());
    }

    #[test]
    fn spectrum() {
        assert_eq!(spectrum_report(0).max_chromatic, 2);
        assert_eq!(spectrum_report(0).kn_quad_genus_hint, None);
        assert_eq!(spectrum_report(1).max_chromatic, 3);
        assert_eq!(kn_quad_genus(13), Some(14));
        assert_eq!(kn_quad_genus(12), None);
        assert_eq!(spectrum_report(14).kn_quad_genus_hint, Some(KnQuadHint { n: 13, genus: 14 }));
        assert_eq!(spectrum_report(1).kn_quad_genus_hint.map(|h| h.n), Some(5));
    }

    #[test]
    fn atlas_layout() {
        let csv = atlas_csv(&atlas(6, Execution::Parallel));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], ATLAS_HEADER);
        assert_eq!(lines[1], "0,4,4,,2");
        assert_eq!(lines[4], "3,8,8,8,4");
        assert_eq!(lines[5], "4,8,10,,4");
        assert!(!csv.contains('\r'));
        assert_eq!(atlas(50, Execution::Sequential), atlas(50, Execution::Parallel));
    }
}
