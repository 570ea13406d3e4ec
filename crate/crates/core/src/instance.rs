//! A space paired with a self-map, with every image resolved up front.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::map::SelfMap;
use crate::rational::Rational;
use crate::space::{PointId, Space};

/// Where a point lands under the map.
///
/// `Outside` only occurs on sampled line spaces: the image is an exact point
/// of the ambient line that the finite sample does not contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Point(PointId),
    Outside(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    space: Space,
    map: SelfMap,
    images: Vec<Image>,
}

impl Instance {
    pub fn new(space: impl Into<Space>, map: SelfMap) -> Result<Self> {
        let space = space.into();
        let n = space.len();
        let images = match &map {
            SelfMap::Table(targets) => {
                if targets.len() != n {
                    return Err(Error::MapLength {
                        got: targets.len(),
                        expected: n,
                    });
                }
                targets
                    .iter()
                    .map(|&t| {
                        if t.0 >= n {
                            Err(Error::PointOutOfRange { index: t.0, len: n })
                        } else {
                            Ok(Image::Point(t))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            SelfMap::Piecewise(_) => {
                let line = space.as_line().ok_or(Error::PiecewiseNeedsLine)?;
                let mut images = Vec::with_capacity(n);
                for (i, x) in line.coords().iter().enumerate() {
                    let y = map.image_coord(x).ok_or_else(|| Error::Uncovered {
                        label: space.labels()[i].clone(),
                        coord: x.clone(),
                    })?;
                    match line.position(&y) {
                        Some(j) => images.push(Image::Point(PointId(j))),
                        None if line.is_sampled() => images.push(Image::Outside(y)),
                        None => {
                            return Err(Error::NotClosed {
                                label: space.labels()[i].clone(),
                                image: y,
                            })
                        }
                    }
                }
                images
            }
        };
        Ok(Instance { space, map, images })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn is_sampled(&self) -> bool {
        self.space.is_sampled()
    }

    pub fn label(&self, p: PointId) -> &str {
        self.space.label(p)
    }

    pub fn point(&self, label: &str) -> Result<PointId> {
        self.space.point(label)
    }

    pub fn image(&self, p: PointId) -> &Image {
        &self.images[p.0]
    }

    /// `T(p)` as a point of the space.
    pub fn apply(&self, p: PointId) -> Result<PointId> {
        let n = self.len();
        if p.0 >= n {
            return Err(Error::PointOutOfRange { index: p.0, len: n });
        }
        match &self.images[p.0] {
            Image::Point(q) => Ok(*q),
            Image::Outside(y) => Err(Error::NotClosed {
                label: self.space.labels()[p.0].clone(),
                image: y.clone(),
            }),
        }
    }

    /// Successor in the functional graph, `None` when the image leaves the
    /// sample.
    pub fn next(&self, p: PointId) -> Option<PointId> {
        match &self.images[p.0] {
            Image::Point(q) => Some(*q),
            Image::Outside(_) => None,
        }
    }

    fn image_coord(&self, i: usize) -> Rational {
        let line = self.space.as_line().expect("coordinates need a line space");
        match &self.images[i] {
            Image::Point(q) => line.coord(q.0).clone(),
            Image::Outside(y) => y.clone(),
        }
    }

    /// `d(p, q)` by raw index.
    pub(crate) fn d(&self, i: usize, j: usize) -> Rational {
        self.space.dist(i, j)
    }

    /// `d(Tp, Tq)`.
    pub(crate) fn d_images(&self, i: usize, j: usize) -> Rational {
        match (&self.space, &self.images[i], &self.images[j]) {
            (_, Image::Point(a), Image::Point(b)) => self.space.dist(a.0, b.0),
            _ => (self.image_coord(i) - self.image_coord(j)).abs(),
        }
    }

    /// `d(p, Tq)`.
    pub(crate) fn d_to_image(&self, i: usize, j: usize) -> Rational {
        match &self.images[j] {
            Image::Point(b) => self.space.dist(i, b.0),
            Image::Outside(y) => {
                let line = self.space.as_line().expect("outside images only on lines");
                (line.coord(i) - y).abs()
            }
        }
    }

    /// Public counterparts of the three distance kinds, for checked access.
    pub fn image_distance(&self, p: PointId, q: PointId) -> Result<Rational> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.d_images(p.0, q.0))
    }

    pub fn distance_to_image(&self, p: PointId, q: PointId) -> Result<Rational> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.d_to_image(p.0, q.0))
    }

    pub fn distance(&self, p: PointId, q: PointId) -> Result<Rational> {
        self.space.distance(p, q)
    }

    fn check(&self, p: PointId) -> Result<()> {
        if p.0 >= self.len() {
            Err(Error::PointOutOfRange {
                index: p.0,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{Domain, Piece};
    use crate::rational::{int, ratio};
    use crate::space::{LineSpace, TabulatedSpace};

    #[test]
    fn table_map_applies() {
        let space = TabulatedSpace::discrete(["w", "x", "y", "z"]).unwrap();
        let inst = Instance::new(space, SelfMap::table([1, 1, 2, 3])).unwrap();
        let w = inst.point("w").unwrap();
        assert_eq!(inst.label(inst.apply(w).unwrap()), "x");
    }

    #[test]
    fn identity_is_identity() {
        let space = TabulatedSpace::discrete(["a", "b", "c"]).unwrap();
        let inst = Instance::new(space, SelfMap::identity(3)).unwrap();
        for i in 0..3 {
            assert_eq!(inst.apply(PointId(i)).unwrap(), PointId(i));
        }
    }

    #[test]
    fn table_map_must_be_total() {
        let space = TabulatedSpace::discrete(["a", "b", "c"]).unwrap();
        assert!(matches!(
            Instance::new(space.clone(), SelfMap::table([0, 1])),
            Err(Error::MapLength { .. })
        ));
        assert!(matches!(
            Instance::new(space, SelfMap::table([0, 1, 3])),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    fn halving() -> SelfMap {
        SelfMap::Piecewise(vec![Piece::new(
            Domain::Interval {
                lo: int(0),
                hi: int(1),
            },
            ratio(1, 2),
            int(0),
        )])
    }

    #[test]
    fn piecewise_map_on_closed_grid() {
        let grid: Vec<_> = (0..=64).map(|j| ratio(j, 64)).collect();
        let inst = Instance::new(LineSpace::new(grid).unwrap(), halving()).unwrap_err();
        // j/64 with odd j halves off the grid, so an unsampled grid is refused.
        assert!(matches!(inst, Error::NotClosed { .. }));

        let grid: Vec<_> = (0..=64).map(|j| ratio(j, 64)).collect();
        let inst = Instance::new(LineSpace::new(grid).unwrap().sampled(), halving()).unwrap();
        let half = inst.point("1/2").unwrap();
        assert_eq!(inst.label(inst.apply(half).unwrap()), "1/4");
        let odd = inst.point("1/64").unwrap();
        assert!(matches!(inst.apply(odd), Err(Error::NotClosed { .. })));
        assert_eq!(inst.image(odd), &Image::Outside(ratio(1, 128)));
        assert_eq!(inst.d_to_image(odd.0, odd.0), ratio(1, 128));
    }

    #[test]
    fn piecewise_needs_cover_and_line() {
        let line = LineSpace::new(vec![int(0), int(2)]).unwrap();
        assert!(matches!(
            Instance::new(line, halving()),
            Err(Error::Uncovered { .. })
        ));
        let tab = TabulatedSpace::discrete(["a", "b"]).unwrap();
        assert!(matches!(
            Instance::new(tab, halving()),
            Err(Error::PiecewiseNeedsLine)
        ));
    }
}
