use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::rational::Rational;
use crate::forms::{LineEmbed, LineKind, PointPair, ProjPoint, Shape};

/// A line slice `L x [base]` (alpha) or `[base] x L` (beta) together with
/// the points of the searched set lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialLine {
    pub kind: LineKind,
    pub base: ProjPoint,
    pub line: LineEmbed,
    /// Sorted.
    pub members: Vec<PointPair>,
}

impl SpecialLine {
    /// Whether `pt` lies on this line slice.
    pub fn contains(&self, pt: &PointPair) -> bool {
        let i = self.kind.moving_factor();
        *pt.factor(1 - i) == self.base && self.line.contains(pt.factor(i).coords())
    }

    /// The point of the slice with line parameter `(s:t)`.
    pub fn point_at(&self, s: &Rational, t: &Rational) -> PointPair {
        let moving = ProjPoint::new(self.line.point(s, t)).expect("line points are nonzero");
        match self.kind {
            LineKind::Alpha => PointPair { p1: moving, p2: self.base.clone() },
            LineKind::Beta => PointPair { p1: self.base.clone(), p2: moving },
        }
    }

    /// Same slice as `other`, regardless of parametrization and members.
    pub fn same_slice(&self, other: &SpecialLine) -> bool {
        self.kind == other.kind && self.base == other.base && self.line.same_line(&other.line)
    }
}

/// Every alpha-line slice with at least `d1 + 2` points of `b` and every
/// beta-line slice with at least `d2 + 2`, found by grouping on the fixed
/// coordinate and testing collinearity of the moving ones. Exhaustive.
pub fn line_census(b: &[PointPair], shape: &Shape) -> Vec<SpecialLine> {
    let mut out = Vec::new();
    for kind in [LineKind::Beta, LineKind::Alpha] {
        let moving = kind.moving_factor();
        let threshold = kind.degree(shape) + 2;
        let mut groups: BTreeMap<&ProjPoint, Vec<&ProjPoint>> = BTreeMap::new();
        for pt in b {
            groups.entry(pt.factor(1 - moving)).or_default().push(pt.factor(moving));
        }
        for (base, mut coords) in groups {
            coords.sort();
            coords.dedup();
            if coords.len() < threshold {
                continue;
            }
            let mut seen: Vec<Vec<&ProjPoint>> = Vec::new();
            for i in 0..coords.len() {
                for j in i + 1..coords.len() {
                    let Ok(line) = LineEmbed::new(coords[i].coords().to_vec(), coords[j].coords().to_vec()) else {
                        continue;
                    };
                    let on: Vec<&ProjPoint> = coords.iter().copied().filter(|c| line.contains(c.coords())).collect();
                    if on.len() < threshold || seen.contains(&on) {
                        continue;
                    }
                    let members = on
                        .iter()
                        .map(|c| match kind {
                            LineKind::Alpha => PointPair { p1: (*c).clone(), p2: base.clone() },
                            LineKind::Beta => PointPair { p1: base.clone(), p2: (*c).clone() },
                        })
                        .collect();
                    seen.push(on);
                    out.push(SpecialLine { kind, base: base.clone(), line, members });
                }
            }
        }
    }
    out
}

/// The special line slice with the most points of `b`, if any qualifies.
pub fn find_special_line(b: &[PointPair], shape: &Shape) -> Option<SpecialLine> {
    let mut best: Option<SpecialLine> = None;
    for cand in line_census(b, shape) {
        if best.as_ref().is_none_or(|cur| cand.members.len() > cur.members.len()) {
            best = Some(cand);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn finds_planted_beta_line() {
        let s = Shape::new(2, 2, 2, 2).unwrap();
        let mut pts: Vec<PointPair> =
            (0..4).map(|i| PointPair::from_ints(&[1, 1, 0], &[1, i, 2 * i]).unwrap()).collect();
        pts.push(PointPair::from_ints(&[1, 1, 0], &[0, 0, 1]).unwrap());
        pts.push(PointPair::from_ints(&[0, 1, 3], &[1, 1, 1]).unwrap());
        let found = find_special_line(&pts, &s).unwrap();
        assert_eq!(found.kind, LineKind::Beta);
        assert_eq!(found.members.len(), 4);
        assert!(found.contains(&pts[2]));
        assert!(!found.contains(&pts[4]));
        assert!(find_special_line(&pts[..3], &s).is_none());
    }

    #[test]
    fn generic_points_have_no_line() {
        let s = Shape::new(1, 1, 1, 1).unwrap();
        let pts = vec![
            PointPair::from_ints(&[1, 0], &[1, 2]).unwrap(),
            PointPair::from_ints(&[1, 1], &[1, 3]).unwrap(),
            PointPair::from_ints(&[1, 2], &[1, 4]).unwrap(),
        ];
        assert!(line_census(&pts, &s).is_empty());
    }
}
