use super::model::{CellComplex, VortexCycle, VortexNerve};
use super::validate::ensure_valid_cycle;
use crate::error::{Error, Result};
use crate::geometry::boolean::{Arrangement, Expr};
use crate::geometry::{hole_strictly_inside, polygons_disjoint, Polygon};
use crate::Scalar;

/// Builds a vortex cycle after checking its invariants: at least two valid
/// member cycles, pairwise non-concentric, holes strictly inside a member
/// and pairwise disjoint, and a common interior of positive area once the
/// holes are removed.
///
/// Two Jordan regions whose boundaries do not meet either nest or are
/// disjoint, so "nested or overlapping" is implied by the shared-interior
/// check.
pub fn build_vortex_cycle<T: Scalar>(
    id: &str,
    cycles: &[&str],
    holes: &[&str],
    cx: &CellComplex<T>,
) -> Result<VortexCycle> {
    if cycles.len() < 2 {
        return Err(Error::TooFewCycles(cycles.len()));
    }
    let tol = cx.tolerance();
    let polys = cycles
        .iter()
        .map(|c| ensure_valid_cycle(c, cx))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..polys.len() {
        if cycles[..i].contains(&cycles[i]) {
            return Err(Error::Malformed(format!("cycle `{}` listed twice", cycles[i])));
        }
        for j in i + 1..polys.len() {
            if polys[i].centroid().distance(polys[j].centroid()) <= tol.geo {
                return Err(Error::Concentric(cycles[i].to_string(), cycles[j].to_string()));
            }
        }
    }
    let hole_polys = holes
        .iter()
        .map(|h| ensure_valid_cycle(&cx.hole(h)?.boundary, cx))
        .collect::<Result<Vec<_>>>()?;
    for (k, h) in hole_polys.iter().enumerate() {
        if !polys.iter().any(|p| hole_strictly_inside(p, h, tol.geo)) {
            return Err(Error::HoleOutside(holes[k].to_string()));
        }
        for (l, g) in hole_polys.iter().enumerate().skip(k + 1) {
            if !polygons_disjoint(h, g, tol.geo) {
                return Err(Error::Malformed(format!(
                    "holes `{}` and `{}` overlap or nest",
                    holes[k], holes[l]
                )));
            }
        }
    }
    if shared_interior_area(&polys, &hole_polys, tol.geo) <= tol.area {
        return Err(Error::NoSharedInterior);
    }
    Ok(VortexCycle {
        id: id.to_string(),
        cycles: cycles.iter().map(|c| c.to_string()).collect(),
        holes: holes.iter().map(|h| h.to_string()).collect(),
    })
}

/// Area of the common interior of `cycles` outside every hole.
pub fn shared_interior_area<T: Scalar>(cycles: &[Polygon<T>], holes: &[Polygon<T>], eps: T) -> T {
    let mut arr = Arrangement::new(eps);
    let mut all: Vec<Expr> = cycles.iter().map(|c| arr.add(c)).collect();
    if !holes.is_empty() {
        let hs = holes.iter().map(|h| arr.add(h)).collect();
        all.push(Expr::outside(Expr::Any(hs)));
    }
    arr.measure(&Expr::All(all)).area
}

/// Whether two member cycles meet: a shared vertex or touching boundaries.
pub fn cycles_meet<T: Scalar>(a: &str, b: &str, cx: &CellComplex<T>) -> Result<bool> {
    let (ca, cb) = (cx.cycle(a)?, cx.cycle(b)?);
    if ca.vertices.iter().any(|v| cb.vertices.contains(v)) {
        return Ok(true);
    }
    Ok(cx
        .polygon_of(ca)?
        .boundaries_meet(&cx.polygon_of(cb)?, cx.tolerance().geo))
}

/// First pair of member cycles (in listing order) that do not meet.
pub fn nerve_failure<T: Scalar>(v: &VortexCycle, cx: &CellComplex<T>) -> Result<Option<(String, String)>> {
    for (i, a) in v.cycles.iter().enumerate() {
        for b in &v.cycles[i + 1..] {
            if !cycles_meet(a, b, cx)? {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// The vortex nerve of `v` when its member cycles pairwise intersect.
pub fn detect_nerve<T: Scalar>(v: &VortexCycle, cx: &CellComplex<T>) -> Result<Option<VortexNerve>> {
    Ok(nerve_failure(v, cx)?.is_none().then(|| VortexNerve {
        id: v.id.clone(),
        vortex: v.id.clone(),
    }))
}

/// True when the holes leave no interior of `c` (remaining area within the
/// area tolerance).
pub fn hole_destroys_cycle<T: Scalar>(c: &str, holes: &[&str], cx: &CellComplex<T>) -> Result<bool> {
    let tol = cx.tolerance();
    let outer = cx.cycle_polygon(c)?;
    let hole_polys = holes.iter().map(|h| cx.hole_polygon(h)).collect::<Result<Vec<_>>>()?;
    let mut arr = Arrangement::new(tol.geo);
    let ec = arr.add(&outer);
    let eh: Vec<Expr> = hole_polys.iter().map(|h| arr.add(h)).collect();
    for (k, e) in eh.iter().enumerate() {
        if arr.measure(&Expr::All(vec![e.clone(), Expr::outside(ec.clone())])).area > tol.area {
            return Err(Error::HoleOutside(holes[k].to_string()));
        }
    }
    let remaining = arr.measure(&Expr::All(vec![ec, Expr::outside(Expr::Any(eh))])).area;
    Ok(remaining <= tol.area)
}
