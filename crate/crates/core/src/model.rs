//! Warehouse geometry, instances and edge multisets.
//!
//! Positions along an aisle are absolute integers measured from the bottom
//! cross-aisle: cross-aisle vertex `j` sits at `(j - 1) * H` and a pick in
//! subaisle `j` with offset `y` sits at `(j - 1) * H + y`.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Rectangular grid geometry with uniform spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WarehouseLayout {
    aisles: usize,
    cross_aisles: usize,
    aisle_pitch: u64,
    subaisle_height: u64,
}

impl WarehouseLayout {
    pub fn new(aisles: usize, cross_aisles: usize, aisle_pitch: u64, subaisle_height: u64) -> Result<Self> {
        if aisles < 1 {
            return Err(Error::InvalidLayout("m must be at least 1".into()));
        }
        if cross_aisles < 2 {
            return Err(Error::InvalidLayout(format!("n must be at least 2, got {cross_aisles}")));
        }
        if aisle_pitch < 1 {
            return Err(Error::InvalidLayout("W must be positive".into()));
        }
        if subaisle_height < 1 {
            return Err(Error::InvalidLayout("H must be positive".into()));
        }
        Ok(Self { aisles, cross_aisles, aisle_pitch, subaisle_height })
    }

    /// Number of aisles `m`.
    pub fn aisles(&self) -> usize {
        self.aisles
    }

    /// Number of cross-aisles `n`.
    pub fn cross_aisles(&self) -> usize {
        self.cross_aisles
    }

    /// Distance `W` between adjacent aisles.
    pub fn aisle_pitch(&self) -> u64 {
        self.aisle_pitch
    }

    /// Distance `H` between adjacent cross-aisles.
    pub fn subaisle_height(&self) -> u64 {
        self.subaisle_height
    }

    pub fn gaps(&self) -> usize {
        self.aisles - 1
    }

    /// Absolute position of cross-aisle vertex `j` (1-based) along any aisle.
    pub fn vertex_position(&self, cross_aisle: usize) -> u64 {
        (cross_aisle as u64 - 1) * self.subaisle_height
    }

    /// Length of a full aisle from the bottom to the top cross-aisle.
    pub fn aisle_length(&self) -> u64 {
        (self.cross_aisles as u64 - 1) * self.subaisle_height
    }

    /// Number of distinct strict-interior pick positions.
    pub fn pick_capacity(&self) -> u64 {
        self.aisles as u64 * (self.cross_aisles as u64 - 1) * self.subaisle_height.saturating_sub(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PickLocation {
    pub aisle: usize,
    pub subaisle: usize,
    pub offset: u64,
}

impl PickLocation {
    pub fn position(&self, layout: &WarehouseLayout) -> u64 {
        layout.vertex_position(self.subaisle) + self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DepotLocation {
    pub aisle: usize,
    pub cross_aisle: usize,
}

/// A validated picking instance with canonically ordered, deduplicated picks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    layout: WarehouseLayout,
    depot: DepotLocation,
    picks: Vec<PickLocation>,
}

impl Instance {
    pub fn new(layout: WarehouseLayout, depot: DepotLocation, mut picks: Vec<PickLocation>) -> Result<Self> {
        check_aisle(depot.aisle, &layout)?;
        if depot.cross_aisle < 1 || depot.cross_aisle > layout.cross_aisles {
            return Err(Error::CrossAisleOutOfRange { cross_aisle: depot.cross_aisle, max: layout.cross_aisles });
        }
        for p in &picks {
            check_pick(p.aisle, p.subaisle, p.offset as i64, &layout)?;
        }
        picks.sort_unstable();
        picks.dedup();
        Ok(Self { layout, depot, picks })
    }

    pub fn layout(&self) -> &WarehouseLayout {
        &self.layout
    }

    pub fn depot(&self) -> DepotLocation {
        self.depot
    }

    pub fn picks(&self) -> &[PickLocation] {
        &self.picks
    }

    pub fn depot_position(&self) -> u64 {
        self.layout.vertex_position(self.depot.cross_aisle)
    }

    /// Absolute positions of picks in `aisle`, sorted.
    pub fn pick_positions(&self, aisle: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .picks
            .iter()
            .filter(|p| p.aisle == aisle)
            .map(|p| p.position(&self.layout))
            .collect();
        out.sort_unstable();
        out
    }

    /// True when the depot and every pick lie in `aisle`.
    pub fn all_required_in_aisle(&self, aisle: usize) -> bool {
        self.depot.aisle == aisle && self.picks.iter().all(|p| p.aisle == aisle)
    }

    pub fn has_required_in_aisle(&self, aisle: usize) -> bool {
        self.depot.aisle == aisle || self.picks.iter().any(|p| p.aisle == aisle)
    }

    /// The instance flipped top-to-bottom.
    pub fn mirrored(&self) -> Instance {
        let n = self.layout.cross_aisles;
        let h = self.layout.subaisle_height;
        let picks = self
            .picks
            .iter()
            .map(|p| PickLocation { aisle: p.aisle, subaisle: n - p.subaisle, offset: h - p.offset })
            .collect();
        let depot = DepotLocation { aisle: self.depot.aisle, cross_aisle: n + 1 - self.depot.cross_aisle };
        Instance::new(self.layout, depot, picks).expect("mirror preserves validity")
    }

    /// The instance with `W`, `H` and every offset multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Instance {
        assert!(factor >= 1);
        let l = self.layout;
        let layout = WarehouseLayout::new(l.aisles, l.cross_aisles, l.aisle_pitch * factor, l.subaisle_height * factor)
            .expect("scaling preserves validity");
        let picks = self
            .picks
            .iter()
            .map(|p| PickLocation { offset: p.offset * factor, ..*p })
            .collect();
        Instance::new(layout, self.depot, picks).expect("scaling preserves validity")
    }

    /// Copy of this instance with one more pick.
    pub fn with_pick(&self, pick: PickLocation) -> Result<Instance> {
        let mut picks = self.picks.clone();
        picks.push(pick);
        Instance::new(self.layout, self.depot, picks)
    }
}

pub(crate) fn check_aisle(aisle: usize, layout: &WarehouseLayout) -> Result<()> {
    if aisle < 1 || aisle > layout.aisles {
        return Err(Error::AisleOutOfRange { aisle, aisles: layout.aisles });
    }
    Ok(())
}

pub(crate) fn check_pick(aisle: usize, subaisle: usize, offset: i64, layout: &WarehouseLayout) -> Result<()> {
    check_aisle(aisle, layout)?;
    if subaisle < 1 || subaisle >= layout.cross_aisles {
        return Err(Error::SubaisleOutOfRange { subaisle, max: layout.cross_aisles - 1 });
    }
    let h = layout.subaisle_height as i64;
    if offset == 0 || offset == h {
        return Err(Error::PickOnVertex { aisle, subaisle, offset });
    }
    if offset < 0 || offset > h {
        return Err(Error::OffsetOutOfRange { offset, height: layout.subaisle_height });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    /// Cross-aisle vertex `j`.
    Vertex(usize),
    /// Cross-aisle vertex `j` that also hosts the depot.
    Depot(usize),
    Pick,
}

impl PointKind {
    pub fn cross_aisle(&self) -> Option<usize> {
        match *self {
            PointKind::Vertex(j) | PointKind::Depot(j) => Some(j),
            PointKind::Pick => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AislePoint {
    pub position: u64,
    pub kind: PointKind,
}

/// The discretization of one aisle: its cross-aisle vertices and picks,
/// sorted bottom to top.
pub fn aisle_points(instance: &Instance, aisle: usize) -> Vec<AislePoint> {
    let layout = instance.layout();
    let mut points: Vec<AislePoint> = (1..=layout.cross_aisles())
        .map(|j| {
            let kind = if instance.depot().aisle == aisle && instance.depot().cross_aisle == j {
                PointKind::Depot(j)
            } else {
                PointKind::Vertex(j)
            };
            AislePoint { position: layout.vertex_position(j), kind }
        })
        .collect();
    points.extend(
        instance
            .pick_positions(aisle)
            .into_iter()
            .map(|position| AislePoint { position, kind: PointKind::Pick }),
    );
    points.sort_by_key(|p| p.position);
    points
}

/// Multiplicities over primitive horizontal and vertical segments.
///
/// Horizontal keys are `(gap, cross_aisle)` where gap `g` joins aisles `g`
/// and `g + 1`. Vertical keys are `(aisle, lo, hi)` with `lo < hi` adjacent
/// aisle points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeMultiset {
    horizontal: BTreeMap<(usize, usize), u32>,
    vertical: BTreeMap<(usize, u64, u64), u32>,
}

impl EdgeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.horizontal.is_empty() && self.vertical.is_empty()
    }

    pub fn add_horizontal(&mut self, gap: usize, cross_aisle: usize, mult: u32) {
        if mult > 0 {
            *self.horizontal.entry((gap, cross_aisle)).or_insert(0) += mult;
        }
    }

    pub fn add_vertical(&mut self, aisle: usize, lo: u64, hi: u64, mult: u32) {
        debug_assert!(lo < hi);
        if mult > 0 {
            *self.vertical.entry((aisle, lo, hi)).or_insert(0) += mult;
        }
    }

    /// Adds `mult` copies of every primitive segment of `points` inside `[lo, hi]`.
    pub fn add_vertical_span(&mut self, aisle: usize, points: &[AislePoint], lo: u64, hi: u64, mult: u32) {
        for w in points.windows(2) {
            if w[0].position >= lo && w[1].position <= hi && w[0].position < w[1].position {
                self.add_vertical(aisle, w[0].position, w[1].position, mult);
            }
        }
    }

    pub fn merge(&mut self, other: &EdgeMultiset) {
        for (&(g, j), &m) in &other.horizontal {
            self.add_horizontal(g, j, m);
        }
        for (&(a, lo, hi), &m) in &other.vertical {
            self.add_vertical(a, lo, hi, m);
        }
    }

    pub fn horizontal(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.horizontal.iter().map(|(k, v)| (*k, *v))
    }

    pub fn vertical(&self) -> impl Iterator<Item = ((usize, u64, u64), u32)> + '_ {
        self.vertical.iter().map(|(k, v)| (*k, *v))
    }

    pub fn horizontal_mult(&self, gap: usize, cross_aisle: usize) -> u32 {
        self.horizontal.get(&(gap, cross_aisle)).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.horizontal.values().chain(self.vertical.values()).copied().max().unwrap_or(0)
    }

    /// Every multiplicity multiplied by `factor`.
    pub fn times(&self, factor: u32) -> EdgeMultiset {
        EdgeMultiset {
            horizontal: self.horizontal.iter().map(|(k, v)| (*k, v * factor)).collect(),
            vertical: self.vertical.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    /// Flips the multiset top-to-bottom to match [`Instance::mirrored`].
    pub fn mirrored(&self, layout: &WarehouseLayout) -> EdgeMultiset {
        let n = layout.cross_aisles();
        let top = layout.aisle_length();
        EdgeMultiset {
            horizontal: self.horizontal.iter().map(|(&(g, j), &m)| ((g, n + 1 - j), m)).collect(),
            vertical: self
                .vertical
                .iter()
                .map(|(&(a, lo, hi), &m)| ((a, top - hi, top - lo), m))
                .collect(),
        }
    }

    /// Scales every vertical position by `factor` to match [`Instance::scaled`].
    pub fn scaled(&self, factor: u64) -> EdgeMultiset {
        EdgeMultiset {
            horizontal: self.horizontal.clone(),
            vertical: self
                .vertical
                .iter()
                .map(|(&(a, lo, hi), &m)| ((a, lo * factor, hi * factor), m))
                .collect(),
        }
    }
}

/// Total length of `edges`: horizontal segments weigh `W`, vertical ones the
/// distance between their endpoints.
pub fn tour_length(instance: &Instance, edges: &EdgeMultiset) -> Result<u64> {
    let layout = instance.layout();
    let mut total = 0u64;
    for ((g, j), m) in edges.horizontal() {
        if g < 1 || g >= layout.aisles() || j < 1 || j > layout.cross_aisles() {
            return Err(Error::UnknownEdge(format!("horizontal ({g}, {j})")));
        }
        total += m as u64 * layout.aisle_pitch();
    }
    let mut cache: BTreeMap<usize, Vec<AislePoint>> = BTreeMap::new();
    for ((a, lo, hi), m) in edges.vertical() {
        if a < 1 || a > layout.aisles() {
            return Err(Error::UnknownEdge(format!("vertical on aisle {a}")));
        }
        let points = cache.entry(a).or_insert_with(|| aisle_points(instance, a));
        let adjacent = points.windows(2).any(|w| w[0].position == lo && w[1].position == hi);
        if !adjacent {
            return Err(Error::UnknownEdge(format!("vertical ({a}, {lo}, {hi})")));
        }
        total += m as u64 * (hi - lo);
    }
    Ok(total)
}

/// Deterministic random instance: `k` distinct picks drawn uniformly over all
/// strict-interior positions, depot uniformly on the bottom cross-aisle.
pub fn generate_instance(m: usize, n: usize, w: u64, h: u64, k: usize, seed: u64) -> Result<Instance> {
    let layout = WarehouseLayout::new(m, n, w, h)?;
    let available = layout.pick_capacity();
    if k as u64 > available {
        return Err(Error::TooManyPicks { requested: k, available });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let depot = DepotLocation { aisle: rng.gen_range(1..=m), cross_aisle: 1 };
    let per_subaisle = h - 1;
    let per_aisle = (n as u64 - 1) * per_subaisle;
    let picks = index::sample(&mut rng, available as usize, k)
        .into_iter()
        .map(|idx| {
            let idx = idx as u64;
            PickLocation {
                aisle: (idx / per_aisle) as usize + 1,
                subaisle: ((idx % per_aisle) / per_subaisle) as usize + 1,
                offset: idx % per_subaisle + 1,
            }
        })
        .collect();
    Instance::new(layout, depot, picks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(m: usize, n: usize, w: u64, h: u64) -> WarehouseLayout {
        WarehouseLayout::new(m, n, w, h).unwrap()
    }

    fn positions(points: &[AislePoint]) -> Vec<u64> {
        points.iter().map(|p| p.position).collect()
    }

    #[test]
    fn layout_rejects_bad_parameters() {
        assert!(WarehouseLayout::new(0, 2, 1, 1).is_err());
        assert!(WarehouseLayout::new(1, 1, 1, 1).is_err());
        assert!(WarehouseLayout::new(1, 2, 0, 1).is_err());
        assert!(WarehouseLayout::new(1, 2, 1, 0).is_err());
    }

    #[test]
    fn picks_are_sorted_and_deduplicated() {
        let picks = vec![
            PickLocation { aisle: 2, subaisle: 1, offset: 3 },
            PickLocation { aisle: 1, subaisle: 1, offset: 7 },
            PickLocation { aisle: 2, subaisle: 1, offset: 3 },
        ];
        let inst = Instance::new(layout(2, 2, 1, 10), DepotLocation { aisle: 1, cross_aisle: 1 }, picks).unwrap();
        assert_eq!(inst.picks().len(), 2);
        assert_eq!(inst.picks()[0].aisle, 1);
    }

    #[test]
    fn pick_on_vertex_is_rejected() {
        let r = Instance::new(
            layout(1, 2, 1, 10),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 1, subaisle: 1, offset: 10 }],
        );
        assert!(matches!(r, Err(Error::PickOnVertex { .. })));
    }

    #[test]
    fn aisle_points_without_picks() {
        let inst = Instance::new(layout(2, 2, 1, 10), DepotLocation { aisle: 1, cross_aisle: 1 }, vec![]).unwrap();
        assert_eq!(positions(&aisle_points(&inst, 2)), vec![0, 10]);
        assert_eq!(aisle_points(&inst, 1)[0].kind, PointKind::Depot(1));
    }

    #[test]
    fn aisle_points_sorted() {
        let picks = vec![
            PickLocation { aisle: 1, subaisle: 1, offset: 7 },
            PickLocation { aisle: 1, subaisle: 1, offset: 3 },
        ];
        let inst = Instance::new(layout(1, 2, 1, 10), DepotLocation { aisle: 1, cross_aisle: 1 }, picks).unwrap();
        assert_eq!(positions(&aisle_points(&inst, 1)), vec![0, 3, 7, 10]);
    }

    #[test]
    fn aisle_points_two_block() {
        let picks = vec![PickLocation { aisle: 1, subaisle: 2, offset: 4 }];
        let inst = Instance::new(layout(1, 3, 1, 10), DepotLocation { aisle: 1, cross_aisle: 1 }, picks).unwrap();
        assert_eq!(positions(&aisle_points(&inst, 1)), vec![0, 10, 14, 20]);
    }

    #[test]
    fn tour_length_basics() {
        let inst = Instance::new(
            layout(2, 2, 5, 10),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 1, subaisle: 1, offset: 4 }],
        )
        .unwrap();
        assert_eq!(tour_length(&inst, &EdgeMultiset::new()).unwrap(), 0);

        let mut e = EdgeMultiset::new();
        e.add_horizontal(1, 1, 1);
        assert_eq!(tour_length(&inst, &e).unwrap(), 5);

        let mut e = EdgeMultiset::new();
        e.add_vertical(1, 0, 4, 2);
        assert_eq!(tour_length(&inst, &e).unwrap(), 8);

        let mut bad = EdgeMultiset::new();
        bad.add_vertical(1, 0, 10, 1);
        assert!(tour_length(&inst, &bad).is_err());
        let mut bad = EdgeMultiset::new();
        bad.add_horizontal(2, 1, 1);
        assert!(tour_length(&inst, &bad).is_err());
    }

    #[test]
    fn generate_is_deterministic_and_valid() {
        let a = generate_instance(3, 2, 5, 10, 0, 7).unwrap();
        assert!(a.picks().is_empty());
        assert_eq!(a, generate_instance(3, 2, 5, 10, 0, 7).unwrap());

        let b = generate_instance(5, 3, 4, 9, 10, 42).unwrap();
        assert_eq!(b.picks().len(), 10);
        assert_eq!(b, generate_instance(5, 3, 4, 9, 10, 42).unwrap());
        for p in b.picks() {
            assert!((1..=5).contains(&p.aisle));
            assert!((1..=2).contains(&p.subaisle));
            assert!(p.offset > 0 && p.offset < 9);
        }
        assert_eq!(b.depot().cross_aisle, 1);
    }

    #[test]
    fn generate_rejects_overfull() {
        assert!(matches!(generate_instance(1, 2, 1, 2, 2, 0), Err(Error::TooManyPicks { .. })));
        assert_eq!(generate_instance(1, 2, 1, 2, 1, 0).unwrap().picks().len(), 1);
    }

    #[test]
    fn mirror_and_scale_preserve_length() {
        let inst = generate_instance(3, 3, 4, 9, 6, 11).unwrap();
        let mut e = EdgeMultiset::new();
        for a in 1..=3 {
            let pts = aisle_points(&inst, a);
            e.add_vertical_span(a, &pts, 0, inst.layout().aisle_length(), 2);
        }
        e.add_horizontal(1, 1, 2);
        e.add_horizontal(2, 3, 1);
        let len = tour_length(&inst, &e).unwrap();
        let mirror = inst.mirrored();
        assert_eq!(tour_length(&mirror, &e.mirrored(inst.layout())).unwrap(), len);
        assert_eq!(mirror.mirrored(), inst);
        for c in [2, 3] {
            assert_eq!(tour_length(&inst.scaled(c), &e.scaled(c)).unwrap(), c * len);
        }
        assert_eq!(tour_length(&inst, &e.times(2)).unwrap(), 2 * len);
    }
}
