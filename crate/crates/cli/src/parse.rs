//! Value parsers for list-shaped flags.

use contpath_core::{HalfspaceRegion, Pattern, StepSet};

fn ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect()
}

/// A lattice point given as one flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords(pub Vec<i64>);

/// Marked intervals given as one flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct Intervals(pub Vec<(f64, f64)>);

/// `0,0` or `3,-1`.
pub fn point(s: &str) -> Result<Coords, String> {
    ints(s).map(Coords)
}

/// `binomial`, `dyck`, or vectors separated by `;`, e.g. `1,1;1,-1`.
pub fn steps(s: &str) -> Result<StepSet, String> {
    match s {
        "binomial" => Ok(StepSet::binomial()),
        "dyck" => Ok(StepSet::dyck()),
        _ => {
            let vs = s.split(';').map(ints).collect::<Result<Vec<_>, _>>()?;
            StepSet::new(vs).map_err(|e| e.to_string())
        }
    }
}

/// `1,2,1`; the empty string is the empty pattern.
pub fn pattern(s: &str) -> Result<Pattern, String> {
    if s.trim().is_empty() {
        return Ok(Pattern::empty());
    }
    let labels = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad label {t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Pattern::new(labels).map_err(|e| e.to_string())
}

/// Constraints `normal>=offset` separated by `;`, e.g. `0,1>=0`;
/// `upper` is the upper half-plane.
pub fn region(s: &str) -> Result<HalfspaceRegion, String> {
    if s == "upper" {
        return Ok(HalfspaceRegion::upper_half_plane());
    }
    let cs = s
        .split(';')
        .map(|c| {
            let (n, off) = c
                .split_once(">=")
                .ok_or_else(|| format!("constraint {c:?} needs the form normal>=offset"))?;
            Ok((
                ints(n)?,
                off.trim()
                    .parse::<i64>()
                    .map_err(|e| format!("bad offset {off:?}: {e}"))?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(HalfspaceRegion::new(cs))
}

/// Disjoint closed intervals `a:b` separated by `,`.
pub fn intervals(s: &str) -> Result<Intervals, String> {
    if s.trim().is_empty() {
        return Ok(Intervals(Vec::new()));
    }
    s.split(',')
        .map(|iv| {
            let (a, b) = iv
                .split_once(':')
                .ok_or_else(|| format!("interval {iv:?} needs the form a:b"))?;
            let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
            Ok((f(a)?, f(b)?))
        })
        .collect::<Result<_, String>>()
        .map(Intervals)
}
