//! Finite bounded lattices with an orthocomplement.
//!
//! A lattice is given by its Hasse cover relation. The order relation, the
//! meet and join tables and the bounds are derived once at construction, so
//! every law check afterwards is an exhaustive table lookup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside a [`FiniteLattice`].
pub type ElementId = usize;

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<ElementId>>,
    join: Vec<Vec<ElementId>>,
    ortho: Option<Vec<ElementId>>,
    bottom: ElementId,
    top: ElementId,
}

/// A triple `(x, y, z)` evaluated against `(x ∨ y) ∧ z = (x ∧ z) ∨ (y ∧ z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
    /// `(x ∨ y) ∧ z`
    pub lhs: ElementId,
    /// `(x ∧ z) ∨ (y ∧ z)`
    pub rhs: ElementId,
}

impl DistributivityWitness {
    pub fn is_genuine(&self) -> bool {
        self.lhs != self.rhs
    }
}

/// A triple with `x ≤ z` evaluated against `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModularityWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
    /// `x ∨ (y ∧ z)`
    pub lhs: ElementId,
    /// `(x ∨ y) ∧ z`
    pub rhs: ElementId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum OrthoViolation {
    Missing,
    NotInvolution { x: ElementId, image: ElementId },
    NotOrderReversing { x: ElementId, y: ElementId },
    MeetNotBottom { x: ElementId, meet: ElementId },
    JoinNotTop { x: ElementId, join: ElementId },
}

/// Outcome of [`FiniteLattice::certify_orthocomplement`].
#[derive(Clone, Debug, Serialize)]
pub struct OrthoReport {
    pub violations: Vec<OrthoViolation>,
    /// Human-readable rendering of each violation, using element names.
    pub messages: Vec<String>,
}

impl OrthoReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Serializable description of a lattice: element names, Hasse covers
/// (lower, upper) and the orthocomplement map, all by element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDump {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub ortho: Option<Vec<(String, String)>>,
}

impl FiniteLattice {
    /// Builds a lattice from element names and cover pairs `(lower, upper)`.
    ///
    /// Fails when the covers do not generate a partial order, when some pair
    /// lacks a unique meet or join, or when the ortho map is malformed. The
    /// orthocomplement laws themselves are not enforced here; see
    /// [`FiniteLattice::certify_orthocomplement`].
    pub fn from_covers(
        names: Vec<String>,
        covers: &[(ElementId, ElementId)],
        ortho: Option<Vec<ElementId>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidInput("lattice must have at least one element".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::UnknownElement(format!("cover ({lo}, {hi})")));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "covers contain a cycle through {} and {}",
                        names[i], names[j]
                    )));
                }
            }
        }

        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = extremal_bound(&leq, x, y, false).ok_or_else(|| {
                    Error::InvalidInput(format!("{} and {} have no unique meet", names[x], names[y]))
                })?;
                join[x][y] = extremal_bound(&leq, x, y, true).ok_or_else(|| {
                    Error::InvalidInput(format!("{} and {} have no unique join", names[x], names[y]))
                })?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x])).ok_or_else(|| {
            Error::InvalidInput("lattice has no bottom element".into())
        })?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x][t]))
            .ok_or_else(|| Error::InvalidInput("lattice has no top element".into()))?;

        if let Some(map) = &ortho {
            if map.len() != n || map.iter().any(|&m| m >= n) {
                return Err(Error::InvalidInput("ortho map must send every element into the lattice".into()));
            }
        }

        Ok(Self { names, leq, meet, join, ortho, bottom, top })
    }

    /// Same as [`FiniteLattice::from_covers`] with element names instead of indices.
    pub fn from_named_covers(
        names: &[&str],
        covers: &[(&str, &str)],
        ortho_pairs: Option<&[(&str, &str)]>,
    ) -> Result<Self> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let index = |name: &str| -> Result<ElementId> {
            names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let idx_covers = covers
            .iter()
            .map(|(lo, hi)| Ok((index(lo)?, index(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        let ortho = match ortho_pairs {
            None => None,
            Some(pairs) => {
                let mut map: Vec<Option<ElementId>> = vec![None; names.len()];
                for (a, b) in pairs {
                    let (a, b) = (index(a)?, index(b)?);
                    map[a] = Some(b);
                    map[b] = Some(a);
                }
                let map = map
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| m.ok_or_else(|| Error::InvalidInput(format!("no ortho image for {}", names[i]))))
                    .collect::<Result<Vec<_>>>()?;
                Some(map)
            }
        };
        Self::from_covers(owned, &idx_covers, ortho)
    }

    pub fn from_dump(dump: &LatticeDump) -> Result<Self> {
        let names: Vec<&str> = dump.elements.iter().map(String::as_str).collect();
        let covers: Vec<(&str, &str)> = dump.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let ortho: Option<Vec<(&str, &str)>> = dump
            .ortho
            .as_ref()
            .map(|pairs| pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect());
        Self::from_named_covers(&names, &covers, ortho.as_deref())
    }

    pub fn to_dump(&self) -> LatticeDump {
        let covers = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        let ortho = self.ortho.as_ref().map(|map| {
            map.iter()
                .enumerate()
                .map(|(x, &y)| (self.names[x].clone(), self.names[y].clone()))
                .collect()
        });
        LatticeDump { elements: self.names.clone(), covers, ortho }
    }

    /// Replaces the orthocomplement map without checking its laws.
    pub fn with_ortho(mut self, ortho: Vec<ElementId>) -> Result<Self> {
        if ortho.len() != self.len() || ortho.iter().any(|&m| m >= self.len()) {
            return Err(Error::InvalidInput("ortho map must send every element into the lattice".into()));
        }
        self.ortho = Some(ortho);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Result<ElementId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    fn check(&self, x: ElementId) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("element index {x}")))
        }
    }

    pub fn leq(&self, x: ElementId, y: ElementId) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.leq[x][y])
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.meet[x][y])
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.join[x][y])
    }

    pub fn ortho(&self, x: ElementId) -> Result<ElementId> {
        self.check(x)?;
        self.ortho
            .as_ref()
            .map(|map| map[x])
            .ok_or_else(|| Error::InvalidInput("lattice has no orthocomplement".into()))
    }

    pub fn has_ortho(&self) -> bool {
        self.ortho.is_some()
    }

    /// Hasse cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<ElementId> {
        self.covers()
            .into_iter()
            .filter(|&(lo, _)| lo == self.bottom)
            .map(|(_, hi)| hi)
            .collect()
    }

    /// Evaluates both sides of the distributive law on one triple.
    pub fn distributivity_at(&self, x: ElementId, y: ElementId, z: ElementId) -> Result<DistributivityWitness> {
        let lhs = self.meet(self.join(x, y)?, z)?;
        let rhs = self.join(self.meet(x, z)?, self.meet(y, z)?)?;
        Ok(DistributivityWitness { x, y, z, lhs, rhs })
    }

    /// All triples violating distributivity, in lexicographic order.
    pub fn distributivity_violations(&self) -> Vec<DistributivityWitness> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet[self.join[x][y]][z];
                    let rhs = self.join[self.meet[x][z]][self.meet[y][z]];
                    if lhs != rhs {
                        out.push(DistributivityWitness { x, y, z, lhs, rhs });
                    }
                }
            }
        }
        out
    }

    /// Returns `(true, None)` for a distributive lattice, otherwise `false`
    /// with the lexicographically first violating triple.
    pub fn certify_distributivity(&self) -> (bool, Option<DistributivityWitness>) {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet[self.join[x][y]][z];
                    let rhs = self.join[self.meet[x][z]][self.meet[y][z]];
                    if lhs != rhs {
                        return (false, Some(DistributivityWitness { x, y, z, lhs, rhs }));
                    }
                }
            }
        }
        (true, None)
    }

    /// Checks `x ≤ z ⇒ x ∨ (y ∧ z) = (x ∨ y) ∧ z` over every triple.
    pub fn certify_modularity(&self) -> (bool, Option<ModularityWitness>) {
        let n = self.len();
        for x in 0..n {
            for z in 0..n {
                if !self.leq[x][z] {
                    continue;
                }
                for y in 0..n {
                    let lhs = self.join[x][self.meet[y][z]];
                    let rhs = self.meet[self.join[x][y]][z];
                    if lhs != rhs {
                        return (false, Some(ModularityWitness { x, y, z, lhs, rhs }));
                    }
                }
            }
        }
        (true, None)
    }

    /// Checks involution, order reversal and both complement laws for every
    /// element, listing every violation found.
    pub fn certify_orthocomplement(&self) -> OrthoReport {
        let Some(map) = &self.ortho else {
            return OrthoReport {
                violations: vec![OrthoViolation::Missing],
                messages: vec!["no orthocomplement defined".into()],
            };
        };
        let n = self.len();
        let mut violations = Vec::new();
        for x in 0..n {
            if map[map[x]] != x {
                violations.push(OrthoViolation::NotInvolution { x, image: map[map[x]] });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.leq[x][y] && !self.leq[map[y]][map[x]] {
                    violations.push(OrthoViolation::NotOrderReversing { x, y });
                }
            }
        }
        for x in 0..n {
            let m = self.meet[x][map[x]];
            if m != self.bottom {
                violations.push(OrthoViolation::MeetNotBottom { x, meet: m });
            }
            let j = self.join[x][map[x]];
            if j != self.top {
                violations.push(OrthoViolation::JoinNotTop { x, join: j });
            }
        }
        let messages = violations.iter().map(|v| self.describe(v)).collect();
        OrthoReport { violations, messages }
    }

    fn describe(&self, v: &OrthoViolation) -> String {
        let nm = |x: ElementId| self.names[x].as_str();
        match *v {
            OrthoViolation::Missing => "no orthocomplement defined".into(),
            OrthoViolation::NotInvolution { x, image } => format!("{}'' = {} ≠ {}", nm(x), nm(image), nm(x)),
            OrthoViolation::NotOrderReversing { x, y } => {
                format!("{} ≤ {} but {}' ≰ {}'", nm(x), nm(y), nm(y), nm(x))
            }
            OrthoViolation::MeetNotBottom { x, .. } => {
                format!("{} ∧ {}' ≠ {}", nm(x), nm(x), nm(self.bottom))
            }
            OrthoViolation::JoinNotTop { x, .. } => format!("{} ∨ {}' ≠ {}", nm(x), nm(x), nm(self.top)),
        }
    }

    /// Renders a distributivity witness with element names.
    pub fn describe_witness(&self, w: &DistributivityWitness) -> String {
        let nm = |x: ElementId| self.names[x].as_str();
        format!(
            "({} ∨ {}) ∧ {} = {} but ({} ∧ {}) ∨ ({} ∧ {}) = {}",
            nm(w.x),
            nm(w.y),
            nm(w.z),
            nm(w.lhs),
            nm(w.x),
            nm(w.z),
            nm(w.y),
            nm(w.z),
            nm(w.rhs)
        )
    }
}

// Unique least upper bound (upper = true) or greatest lower bound of x and y.
fn extremal_bound(leq: &[Vec<bool>], x: usize, y: usize, upper: bool) -> Option<usize> {
    let n = leq.len();
    let bounds: Vec<usize> = (0..n)
        .filter(|&b| if upper { leq[x][b] && leq[y][b] } else { leq[b][x] && leq[b][y] })
        .collect();
    let mut best = bounds.iter().copied().filter(|&b| {
        bounds
            .iter()
            .all(|&c| if upper { leq[b][c] } else { leq[c][b] })
    });
    let first = best.next()?;
    if best.next().is_some() {
        return None;
    }
    Some(first)
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice {{{}}}", self.names.join(", "))
    }
}

/// Spin-½ question lattice: bottom `0`, four pairwise-incomparable atoms and
/// top `I`, with orthocomplement pairs (1, 3) and (2, 4).
pub fn build_spin_half_lattice() -> FiniteLattice {
    const NAMES: [&str; 6] = ["0", "1", "2", "3", "4", "I"];
    let covers: Vec<(&str, &str)> = ["1", "2", "3", "4"]
        .iter()
        .flat_map(|a| [("0", *a), (*a, "I")])
        .collect();
    FiniteLattice::from_named_covers(&NAMES, &covers, Some(&[("0", "I"), ("1", "3"), ("2", "4")]))
        .expect("spin-1/2 lattice is well formed")
}

/// Spin-1 question lattice: bottom `0`, atoms `A0..A4`, planes `A5..A9` and
/// top `I`. `A0` is the isolated vertex; `A5` is the square plane.
pub fn build_spin_one_lattice() -> FiniteLattice {
    const NAMES: [&str; 12] = ["0", "A0", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "I"];
    const COVERS: [(&str, &str); 22] = [
        ("0", "A0"),
        ("0", "A1"),
        ("0", "A2"),
        ("0", "A3"),
        ("0", "A4"),
        ("A1", "A5"),
        ("A2", "A5"),
        ("A3", "A5"),
        ("A4", "A5"),
        ("A0", "A6"),
        ("A1", "A6"),
        ("A0", "A7"),
        ("A2", "A7"),
        ("A0", "A8"),
        ("A3", "A8"),
        ("A0", "A9"),
        ("A4", "A9"),
        ("A5", "I"),
        ("A6", "I"),
        ("A7", "I"),
        ("A8", "I"),
        ("A9", "I"),
    ];
    const ORTHO: [(&str, &str); 6] = [
        ("0", "I"),
        ("A0", "A5"),
        ("A1", "A8"),
        ("A2", "A9"),
        ("A3", "A6"),
        ("A4", "A7"),
    ];
    FiniteLattice::from_named_covers(&NAMES, &COVERS, Some(&ORTHO)).expect("spin-1 lattice is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_2() -> FiniteLattice {
        FiniteLattice::from_named_covers(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            Some(&[("0", "1"), ("a", "b")]),
        )
        .unwrap()
    }

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_named_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
            None,
        )
        .unwrap()
    }

    fn id(l: &FiniteLattice, s: &str) -> ElementId {
        l.element(s).unwrap()
    }

    #[test]
    fn spin_half_atoms_join_to_top_and_meet_to_bottom() {
        let l = build_spin_half_lattice();
        assert_eq!(l.len(), 6);
        assert_eq!(l.atoms().len(), 4);
        let atoms = ["1", "2", "3", "4"];
        for a in atoms {
            for b in atoms {
                if a != b {
                    assert_eq!(l.join(id(&l, a), id(&l, b)).unwrap(), l.top());
                    assert_eq!(l.meet(id(&l, a), id(&l, b)).unwrap(), l.bottom());
                }
            }
        }
        assert_eq!(l.ortho(id(&l, "1")).unwrap(), id(&l, "3"));
        let two = id(&l, "2");
        assert_eq!(l.ortho(l.ortho(two).unwrap()).unwrap(), two);
    }

    #[test]
    fn spin_one_named_joins_and_meets() {
        let l = build_spin_one_lattice();
        assert_eq!(l.len(), 12);
        assert_eq!(l.join(id(&l, "A0"), id(&l, "A4")).unwrap(), id(&l, "A9"));
        assert_eq!(l.meet(id(&l, "A7"), id(&l, "A5")).unwrap(), id(&l, "A2"));
        assert_eq!(l.join(id(&l, "A1"), id(&l, "A3")).unwrap(), id(&l, "A5"));
        assert_eq!(l.join(id(&l, "A2"), id(&l, "A4")).unwrap(), id(&l, "A5"));
        assert_eq!(l.join(id(&l, "A0"), id(&l, "A1")).unwrap(), id(&l, "A6"));
        assert_eq!(l.join(id(&l, "A0"), id(&l, "A2")).unwrap(), id(&l, "A7"));
        assert_eq!(l.join(id(&l, "A0"), id(&l, "A3")).unwrap(), id(&l, "A8"));
        for x in l.elements() {
            assert_eq!(l.meet(x, l.top()).unwrap(), x);
            assert_eq!(l.join(x, x).unwrap(), x);
        }
    }

    #[test]
    fn unknown_elements_are_rejected() {
        let l = build_spin_half_lattice();
        assert!(matches!(l.meet(0, 17), Err(Error::UnknownElement(_))));
        assert!(matches!(l.element("A3"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn non_lattice_posets_are_rejected() {
        // two maximal elements, no top
        let r = FiniteLattice::from_named_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")], None);
        assert!(r.is_err());
        let cyc = FiniteLattice::from_named_covers(&["a", "b"], &[("a", "b"), ("b", "a")], None);
        assert!(cyc.is_err());
    }

    #[test]
    fn spin_half_first_distributivity_witness() {
        let l = build_spin_half_lattice();
        let (ok, w) = l.certify_distributivity();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.x, w.y, w.z), (id(&l, "1"), id(&l, "2"), id(&l, "3")));
        assert_eq!(w.lhs, id(&l, "3"));
        assert_eq!(w.rhs, l.bottom());
    }

    #[test]
    fn spin_one_distributivity_fails_on_the_named_triple() {
        let l = build_spin_one_lattice();
        let (ok, first) = l.certify_distributivity();
        assert!(!ok);
        // lexicographic search hits (A1, A2, A3) before (A1, A4, A7)
        let first = first.unwrap();
        assert_eq!((first.x, first.y, first.z), (id(&l, "A1"), id(&l, "A2"), id(&l, "A3")));
        let w = l.distributivity_at(id(&l, "A1"), id(&l, "A4"), id(&l, "A7")).unwrap();
        assert!(w.is_genuine());
        assert_eq!(w.lhs, id(&l, "A2"));
        assert_eq!(w.rhs, l.bottom());
        assert!(l.distributivity_violations().contains(&w));
    }

    #[test]
    fn boolean_lattice_is_distributive() {
        let b = boolean_2();
        assert_eq!(b.certify_distributivity(), (true, None));
        assert!(b.certify_modularity().0);
        assert!(b.certify_orthocomplement().is_clean());
    }

    #[test]
    fn modularity_of_game_lattices_and_pentagon() {
        assert!(build_spin_half_lattice().certify_modularity().0);
        assert!(build_spin_one_lattice().certify_modularity().0);
        let n5 = pentagon();
        let (ok, w) = n5.certify_modularity();
        assert!(!ok);
        let w = w.unwrap();
        // a ≤ c: a ∨ (b ∧ c) = a but (a ∨ b) ∧ c = c
        assert_eq!((w.x, w.y, w.z), (id(&n5, "a"), id(&n5, "b"), id(&n5, "c")));
        assert_eq!(w.lhs, id(&n5, "a"));
        assert_eq!(w.rhs, id(&n5, "c"));
    }

    #[test]
    fn orthocomplement_laws_hold_for_both_lattices() {
        assert!(build_spin_half_lattice().certify_orthocomplement().is_clean());
        assert!(build_spin_one_lattice().certify_orthocomplement().is_clean());
        assert_eq!(pentagon().certify_orthocomplement().violations, vec![OrthoViolation::Missing]);
    }

    #[test]
    fn injected_self_ortho_is_reported() {
        let l = build_spin_half_lattice();
        let mut map: Vec<ElementId> = l.elements().map(|x| l.ortho(x).unwrap()).collect();
        let one = id(&l, "1");
        map[one] = one;
        let bad = l.with_ortho(map).unwrap();
        let report = bad.certify_orthocomplement();
        assert!(!report.is_clean());
        assert!(report.messages.iter().any(|m| m == "1 ∧ 1' ≠ 0"), "{:?}", report.messages);
    }

    #[test]
    fn exhaustive_lattice_laws() {
        for l in [build_spin_half_lattice(), build_spin_one_lattice()] {
            for x in l.elements() {
                for y in l.elements() {
                    let m = l.meet(x, y).unwrap();
                    let j = l.join(x, y).unwrap();
                    assert_eq!(m, l.meet(y, x).unwrap());
                    assert_eq!(j, l.join(y, x).unwrap());
                    assert_eq!(l.meet(x, j).unwrap(), x);
                    assert_eq!(l.join(x, m).unwrap(), x);
                    // De Morgan
                    assert_eq!(
                        l.ortho(j).unwrap(),
                        l.meet(l.ortho(x).unwrap(), l.ortho(y).unwrap()).unwrap()
                    );
                    for z in l.elements() {
                        assert_eq!(
                            l.meet(l.meet(x, y).unwrap(), z).unwrap(),
                            l.meet(x, l.meet(y, z).unwrap()).unwrap()
                        );
                        assert_eq!(
                            l.join(l.join(x, y).unwrap(), z).unwrap(),
                            l.join(x, l.join(y, z).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dump_round_trip() {
        let l = build_spin_one_lattice();
        let dump = l.to_dump();
        assert_eq!(dump.covers.len(), 22);
        let json = serde_json::to_string(&dump).unwrap();
        let back: LatticeDump = serde_json::from_str(&json).unwrap();
        let rebuilt = FiniteLattice::from_dump(&back).unwrap();
        assert_eq!(rebuilt.to_dump(), dump);
    }
}
