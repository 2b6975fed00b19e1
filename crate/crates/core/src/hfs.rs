//! Hereditarily finite sets in canonical form.
//!
//! A set is stored as its strictly descending list of children, ordered by
//! serial number. The serial number of a set is `Σ 2^serial(child)`, an
//! Ackermann-style bijection between sets of rank ≤ r and `0..hexp(r)`.
//! The ordering on [`Hfs`] is computed structurally, so it agrees with the
//! serial order at every rank, including ranks whose serials are too large
//! to materialize.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{QsetError, Result};

/// Highest rank whose serial numbers are materialized as integers.
pub const SERIAL_RANK_LIMIT: u32 = 5;

/// Highest rank that may be enumerated exhaustively (`hexp 4 = 65536` sets).
pub const ENUMERATION_RANK_LIMIT: u32 = 4;

/// Highest rank whose serials fit in a `u64` (rank-4 serials are below 2^16).
const SMALL_SERIAL_RANK: u32 = 4;

struct Node {
    children: Box<[Hfs]>,
    rank: u32,
}

/// A hereditarily finite set.
#[derive(Clone)]
pub struct Hfs(Arc<Node>);

impl Hfs {
    /// The empty set, written `1` (the vacuum).
    pub fn empty() -> Hfs {
        small_sets()[0].clone()
    }

    /// Builds a set from already sorted (strictly descending) children.
    pub(crate) fn from_sorted(children: Vec<Hfs>) -> Hfs {
        debug_assert!(children.windows(2).all(|w| w[0] > w[1]));
        let rank = children.first().map_or(0, |c| c.rank() + 1);
        Hfs(Arc::new(Node {
            children: children.into_boxed_slice(),
            rank,
        }))
    }

    /// Builds a set from children in any order. Repeated children are
    /// rejected: a set cannot hold the same member twice.
    pub fn from_children(children: impl IntoIterator<Item = Hfs>) -> Result<Hfs> {
        let mut children: Vec<Hfs> = children.into_iter().collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(w) = children.windows(2).find(|w| w[0] == w[1]) {
            return Err(QsetError::Invalid(format!("repeated member {}", w[0])));
        }
        Ok(Hfs::from_sorted(children))
    }

    /// The unit set `{x}`.
    pub fn singleton(x: Hfs) -> Hfs {
        Hfs::from_sorted(vec![x])
    }

    /// Members in strictly descending serial order.
    pub fn children(&self) -> &[Hfs] {
        &self.0.children
    }

    /// Nesting depth: 0 for the empty set, else one more than the deepest child.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// Number of members (top bars).
    pub fn grade(&self) -> usize {
        self.0.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn contains(&self, x: &Hfs) -> bool {
        // children are descending, so binary search with reversed order
        self.children().binary_search_by(|c| x.cmp(c)).is_ok()
    }

    /// Serial number as a `u64`, available for rank ≤ 4.
    pub fn small_serial(&self) -> Option<u64> {
        if self.rank() > SMALL_SERIAL_RANK {
            return None;
        }
        Some(
            self.children()
                .iter()
                .map(|c| 1u64 << c.small_serial().expect("child of rank ≤ 3"))
                .sum(),
        )
    }

    /// Serial number `Σ 2^serial(child)`. Refused above rank 5.
    pub fn serial(&self) -> Result<BigUint> {
        if self.rank() > SERIAL_RANK_LIMIT {
            return Err(QsetError::RankGuard {
                rank: self.rank(),
                limit: SERIAL_RANK_LIMIT,
            });
        }
        let mut n = BigUint::zero();
        for c in self.children() {
            n.set_bit(c.small_serial().expect("child of rank ≤ 4"), true);
        }
        Ok(n)
    }

    /// Inverse of [`Hfs::serial`]: children are the exponents of the binary
    /// expansion of `n`, decoded recursively.
    pub fn from_serial(n: &BigUint) -> Hfs {
        if let Some(small) = n.to_u64() {
            return Hfs::from_serial_u64(small);
        }
        let children = (0..n.bits())
            .rev()
            .filter(|&b| n.bit(b))
            .map(Hfs::from_serial_u64)
            .collect();
        Hfs::from_sorted(children)
    }

    pub fn from_serial_u64(n: u64) -> Hfs {
        let table = small_sets();
        if (n as usize) < table.len() {
            return table[n as usize].clone();
        }
        let children = (0..64u64)
            .rev()
            .filter(|&b| n >> b & 1 == 1)
            .map(Hfs::from_serial_u64)
            .collect();
        Hfs::from_sorted(children)
    }

    /// Sparse hyperbinary digits: the serials of the children.
    pub fn hyperbinary(&self) -> Result<HyperbinaryDigits> {
        let places = self
            .children()
            .iter()
            .map(Hfs::serial)
            .collect::<Result<Vec<_>>>()?;
        Ok(HyperbinaryDigits { places })
    }

    /// Disjoint union of sets; `None` if any member is shared.
    pub fn union_disjoint<'a>(parts: impl IntoIterator<Item = &'a Hfs>) -> Option<Hfs> {
        let children = parts
            .into_iter()
            .flat_map(|p| p.children().iter().cloned())
            .collect::<Vec<_>>();
        Hfs::from_children(children).ok()
    }
}

fn small_sets() -> &'static [Hfs] {
    static SMALL: OnceLock<Vec<Hfs>> = OnceLock::new();
    SMALL.get_or_init(|| {
        let mut sets: Vec<Hfs> = Vec::with_capacity(16);
        sets.push(Hfs(Arc::new(Node {
            children: Box::new([]),
            rank: 0,
        })));
        for n in 1..16usize {
            let children = (0..4)
                .rev()
                .filter(|&b| n >> b & 1 == 1)
                .map(|b| sets[b].clone())
                .collect();
            sets.push(Hfs::from_sorted(children));
        }
        sets
    })
}

impl PartialEq for Hfs {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.rank() == other.rank() && self.children() == other.children())
    }
}

impl Eq for Hfs {}

impl Ord for Hfs {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        // tiers occupy consecutive serial ranges
        match self.rank().cmp(&other.rank()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.children().iter().zip(other.children()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.grade().cmp(&other.grade())
    }
}

impl PartialOrd for Hfs {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Hfs {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_usize(self.grade());
        for c in self.children() {
            c.hash(state);
        }
    }
}

/// Canonical brace form: `1` for the empty set, otherwise `{c1,c2,…}` with
/// children in descending serial order.
impl fmt::Display for Hfs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        f.write_str("{")?;
        for (i, c) in self.children().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Hfs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hfs({self})")
    }
}

/// Nested arrays: `[]` is the empty set, `[[]]` is `{1}`.
impl Serialize for Hfs {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.grade()))?;
        for c in self.children() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Hfs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let children = Vec::<Hfs>::deserialize(deserializer)?;
        Hfs::from_children(children).map_err(serde::de::Error::custom)
    }
}

/// Sparse hyperbinary form of a serial: the distinct binary places that hold a 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbinaryDigits {
    /// Descending, pairwise distinct.
    pub places: Vec<BigUint>,
}

impl HyperbinaryDigits {
    pub fn from_value(n: &BigUint) -> HyperbinaryDigits {
        let places = (0..n.bits())
            .rev()
            .filter(|&b| n.bit(b))
            .map(BigUint::from)
            .collect();
        HyperbinaryDigits { places }
    }

    /// `Σ 2^place`. Fails when a place is too large to shift by.
    pub fn value(&self) -> Result<BigUint> {
        let mut n = BigUint::zero();
        for p in &self.places {
            let bit = p.to_u64().filter(|&b| b <= 1 << 20).ok_or_else(|| {
                QsetError::SizeGuard(format!("hyperbinary place {p} is too large"))
            })?;
            n.set_bit(bit, true);
        }
        Ok(n)
    }
}

/// `hexp 0 = 1`, `hexp (r+1) = 2^hexp r`: the number of sets of rank ≤ r.
pub fn hexp(r: u32) -> Result<BigUint> {
    if r > SERIAL_RANK_LIMIT {
        return Err(QsetError::RankGuard {
            rank: r,
            limit: SERIAL_RANK_LIMIT,
        });
    }
    let mut value = BigUint::one();
    for _ in 0..r {
        let exponent = value.to_u64().expect("hexp 4 fits in u64");
        value = BigUint::zero();
        value.set_bit(exponent, true);
    }
    Ok(value)
}

/// Serial interval `[hexp(r-1), hexp(r))` of tier r. Tier 0 is `[0, 1)`.
pub fn tier_range(r: u32) -> Result<(BigUint, BigUint)> {
    if r == 0 {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    Ok((hexp(r - 1)?, hexp(r)?))
}

/// All sets of rank ≤ r in ascending serial order. Refused above rank 4.
pub fn enumerate_rank(r: u32) -> Result<impl Iterator<Item = Hfs>> {
    if r > ENUMERATION_RANK_LIMIT {
        return Err(QsetError::RankGuard {
            rank: r,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    let count = hexp(r)?.to_u64().expect("hexp 4 fits in u64");
    Ok((0..count).map(Hfs::from_serial_u64))
}

/// Splits `x` into one factor per cut of the strictly descending sequence
/// `cuts = r1 > r2 > … > rn`. Factor k holds the members whose unit set
/// `{c}` has rank in `(r_{k+1}, r_k]`; the last factor holds those of rank
/// ≤ rn. Reuniting the factors gives back `x`.
pub fn factor_by_tiers(x: &Hfs, cuts: &[u32]) -> Result<Vec<Hfs>> {
    let Some(&top) = cuts.first() else {
        return Err(QsetError::Invalid("no rank cuts given".into()));
    };
    if cuts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(QsetError::Invalid(format!(
            "rank cuts {cuts:?} are not strictly descending"
        )));
    }
    if x.rank() > top {
        return Err(QsetError::RankGuard {
            rank: x.rank(),
            limit: top,
        });
    }
    let mut factors = vec![Vec::new(); cuts.len()];
    for c in x.children() {
        let unit_rank = c.rank() + 1;
        let k = cuts
            .iter()
            .rposition(|&cut| unit_rank <= cut)
            .expect("unit rank ≤ r1");
        factors[k].push(c.clone());
    }
    Ok(factors.into_iter().map(Hfs::from_sorted).collect())
}
