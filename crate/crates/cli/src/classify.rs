//! Recognition of hearts in the `Δⁿ P^{r,s}` family of the constructible
//! derived category of `P¹` stratified by a point.
//!
//! `P^{r,s}` has simples `C_x[s]` and `j_!C_U[s−r+1]` (r > 0), `C_X[s+1]`
//! (r = 0) or `j_*C_U[s−r+1]` (r < 0); `Δ` is the twist by `C_X[1]`.

use serde::Serialize;
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::linalg::RatMatrix;
use tiltstab_core::quiver::Representation;
use tiltstab_core::Result;

/// How far the classifier untwists before giving up.
pub const DEFAULT_TWIST_SEARCH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeartTag {
    Perverse,
    Constructible,
    Semisimple,
    Unknown,
}

impl HeartTag {
    pub fn of_r(r: i64) -> HeartTag {
        match r.abs() {
            0 => HeartTag::Perverse,
            1 => HeartTag::Constructible,
            _ => HeartTag::Semisimple,
        }
    }

    pub fn color(self) -> &'static str {
        match self {
            HeartTag::Perverse => "white",
            HeartTag::Constructible => "grey",
            HeartTag::Semisimple => "black",
            HeartTag::Unknown => "red",
        }
    }
}

/// `Δⁿ P^{r,s}`, with the smallest `|n|` among the equal descriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyCoords {
    pub n: i64,
    pub r: i64,
    pub s: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeartLabel {
    pub tag: HeartTag,
    pub coords: Option<FamilyCoords>,
}

impl HeartLabel {
    pub fn unknown() -> Self {
        HeartLabel { tag: HeartTag::Unknown, coords: None }
    }

    pub fn name(&self) -> String {
        match self.coords {
            None => "?".into(),
            Some(FamilyCoords { n: 0, r, s }) => format!("P^{{{r},{s}}}"),
            Some(FamilyCoords { n, r, s }) => format!("Δ^{n} P^{{{r},{s}}}"),
        }
    }
}

/// The reference objects of the perverse heart of the vc=0 algebra.
#[derive(Clone, Copy, Debug)]
pub struct P1Objects {
    /// `C_x`, the simple at the second vertex.
    pub c_x: ObjId,
    /// `C_X[1]`, the spherical simple at the first vertex.
    pub c_big: ObjId,
    /// `j_!C_U[1]`, the projective cover of `C_X[1]`.
    pub j_shriek: ObjId,
    /// `j_*C_U[1]`, the extension with `C_x` on top.
    pub j_star: ObjId,
}

impl P1Objects {
    pub fn new(wb: &mut Workbench) -> Result<Self> {
        let alg = wb.alg().clone();
        let c_big = wb.cat_mut().simple_module(0)?;
        let c_x = wb.cat_mut().simple_module(1)?;
        let j_shriek = wb.cat_mut().projective(0)?;
        let m = Representation::new(
            &alg,
            vec![1, 1],
            vec![RatMatrix::from_i64(1, 1, &[0]), RatMatrix::from_i64(1, 1, &[1])],
        )?;
        let j_star = wb.cat_mut().module(&m)?;
        Ok(P1Objects { c_x, c_big, j_shriek, j_star })
    }

    /// Simples of `P^{r,s}`, `C_x[s]` first.
    pub fn family_simples(&self, wb: &mut Workbench, r: i64, s: i64) -> [ObjId; 2] {
        let cat = wb.cat_mut();
        let a = cat.shift(self.c_x, s as i32);
        let b = match r {
            0 => cat.shift(self.c_big, s as i32),
            r if r > 0 => cat.shift(self.j_shriek, (s - r) as i32),
            r => cat.shift(self.j_star, (s - r) as i32),
        };
        [a, b]
    }

    pub fn family_heart(&self, wb: &mut Workbench, coords: FamilyCoords) -> Result<Heart> {
        let [a, b] = self.family_simples(wb, coords.r, coords.s);
        let mut h = wb.heart(vec![a, b])?;
        for _ in 0..coords.n.max(0) {
            h = wb.twist_heart(self.c_big, &h)?;
        }
        for _ in 0..(-coords.n).max(0) {
            h = wb.twist_inverse_heart(self.c_big, &h)?;
        }
        Ok(h)
    }

    /// `(r, s)` when the heart is exactly some `P^{r,s}`.
    pub fn match_untwisted(&self, wb: &mut Workbench, h: &Heart) -> Option<(i64, i64)> {
        if h.len() != 2 {
            return None;
        }
        let (a, b) = (h.simples()[0], h.simples()[1]);
        for (p, q) in [(a, b), (b, a)] {
            let Some(s) = shift_of(wb, p, self.c_x) else { continue };
            if shift_of(wb, q, self.c_big) == Some(s) {
                return Some((0, s));
            }
            if let Some(t) = shift_of(wb, q, self.j_shriek) {
                if s - t > 0 {
                    return Some((s - t, s));
                }
            }
            if let Some(t) = shift_of(wb, q, self.j_star) {
                if s - t < 0 {
                    return Some((s - t, s));
                }
            }
        }
        None
    }
}

/// `t` with `x = base[t]`, if any.
fn shift_of(wb: &mut Workbench, x: ObjId, base: ObjId) -> Option<i64> {
    let (xl, _) = wb.cat().object(x).range()?;
    let (bl, _) = wb.cat().object(base).range()?;
    let t = bl - xl;
    (wb.cat_mut().shift(base, t) == x).then_some(t as i64)
}

/// Labels a heart by untwisting it until it matches some `P^{r,s}`.
pub fn classify_p1_heart(wb: &mut Workbench, refs: &P1Objects, h: &Heart, search: usize) -> Result<HeartLabel> {
    let mut back = h.clone();
    let mut forward = h.clone();
    for m in 0..=search as i64 {
        if m > 0 {
            back = wb.twist_inverse_heart(refs.c_big, &back)?;
        }
        if let Some((r, s)) = refs.match_untwisted(wb, &back) {
            return Ok(HeartLabel { tag: HeartTag::of_r(r), coords: Some(FamilyCoords { n: m, r, s }) });
        }
        if m > 0 {
            forward = wb.twist_heart(refs.c_big, &forward)?;
            if let Some((r, s)) = refs.match_untwisted(wb, &forward) {
                return Ok(HeartLabel { tag: HeartTag::of_r(r), coords: Some(FamilyCoords { n: -m, r, s }) });
            }
        }
    }
    Ok(HeartLabel::unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltstab_core::quiver::vc_zero_algebra;

    fn setup() -> (Workbench, Heart, P1Objects) {
        let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        let refs = P1Objects::new(&mut wb).unwrap();
        (wb, h, refs)
    }

    fn coords(n: i64, r: i64, s: i64) -> Option<FamilyCoords> {
        Some(FamilyCoords { n, r, s })
    }

    #[test]
    fn standard_heart_is_the_origin() {
        let (mut wb, h, refs) = setup();
        let l = classify_p1_heart(&mut wb, &refs, &h, 2).unwrap();
        assert_eq!(l, HeartLabel { tag: HeartTag::Perverse, coords: coords(0, 0, 0) });
    }

    #[test]
    fn left_tilt_at_cx_is_constructible() {
        let (mut wb, h, refs) = setup();
        let i = h.index_of(refs.c_x).unwrap();
        let l = wb.left_tilt_simple(&h, i).unwrap();
        let label = classify_p1_heart(&mut wb, &refs, &l, 2).unwrap();
        assert_eq!(label, HeartLabel { tag: HeartTag::Constructible, coords: coords(0, -1, -1) });
    }

    #[test]
    fn twisted_perverse_heart_is_outside_the_untwisted_rows() {
        let (mut wb, h, refs) = setup();
        let t = wb.twist_heart(refs.c_big, &h).unwrap();
        assert!(refs.match_untwisted(&mut wb, &t).is_none());
        let label = classify_p1_heart(&mut wb, &refs, &t, 2).unwrap();
        assert_eq!(label.coords, coords(1, 0, 0));
    }

    #[test]
    fn family_hearts_round_trip_through_the_classifier() {
        let (mut wb, _, refs) = setup();
        for n in -1..=1 {
            for r in -2..=2 {
                for s in -1..=1 {
                    let c = FamilyCoords { n, r, s };
                    let h = refs.family_heart(&mut wb, c).unwrap();
                    let label = classify_p1_heart(&mut wb, &refs, &h, 3).unwrap();
                    assert_eq!(label.tag, HeartTag::of_r(r));
                    let back = refs.family_heart(&mut wb, label.coords.unwrap()).unwrap();
                    assert_eq!(back, h);
                }
            }
        }
    }

    #[test]
    fn twisting_the_diagonal_rows_gives_the_positive_rows() {
        let (mut wb, _, refs) = setup();
        for r in 1..=2 {
            let d = refs.family_heart(&mut wb, FamilyCoords { n: 0, r: -r, s: -r }).unwrap();
            let t = wb.twist_heart(refs.c_big, &d).unwrap();
            let p = refs.family_heart(&mut wb, FamilyCoords { n: 0, r, s: 0 }).unwrap();
            assert_eq!(t, p, "r = {r}");
        }
    }
}
