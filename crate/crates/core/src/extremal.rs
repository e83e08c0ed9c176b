//! Extremal small-doubling families used as golden fixtures: two separated
//! boxes, an AP of boxes, a block plus scattered points, a cone over a
//! progression, and the house profile. Every predicted statistic is stored
//! alongside the emitted set and recomputed from it by `verify_example`, so
//! the instances double as oracles for the sumset machinery. Separation
//! offsets are computed from the widest sumset component, never guessed.

use crate::covering::{ap_cover, co11};
use crate::error::{Error, Result};
use crate::fibered::FiberedSet;
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::polycube::Polycube;
use crate::rat::{rat, rfloor, rint, rpow, rzero, Rat};
use crate::roots::{rat_nth_root_exact, PowVal};
use crate::set_value::SetValue;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

/// The five generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    TwoBoxes,
    ApBoxes,
    Scattered,
    Cone,
    House,
}

impl ExampleName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleName::TwoBoxes => "two_boxes",
            ExampleName::ApBoxes => "ap_boxes",
            ExampleName::Scattered => "scattered",
            ExampleName::Cone => "cone",
            ExampleName::House => "house",
        }
    }

    pub fn parse(s: &str) -> Option<ExampleName> {
        match s {
            "two_boxes" => Some(ExampleName::TwoBoxes),
            "ap_boxes" => Some(ExampleName::ApBoxes),
            "scattered" => Some(ExampleName::Scattered),
            "cone" => Some(ExampleName::Cone),
            "house" => Some(ExampleName::House),
            _ => None,
        }
    }
}

/// How a predicted number is recomputed from the emitted set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// |A| (measure) or #A (cardinality).
    Size,
    /// |A+A| or #(A+A).
    SumsetSize,
    /// |(A+A)/2|.
    HalfSumsetSize,
    /// Component count of A+A (interval instances only).
    SumsetComponents,
    /// Positive-length components of A+A.
    SumsetSolidComponents,
    /// Degenerate point components of A+A.
    SumsetPointComponents,
    /// Measure of the part of A at or beyond the separation offset.
    PieceBeyondSep,
    /// Excess of the minimal AP-of-intervals cover over |A|.
    ApCoverExcess,
    /// Excess of the per-fiber convex hull over |A|.
    HullFiberExcess,
    /// |A+A|/|A| - (4 - 2/n) with n the component count of A.
    DoublingExcess,
}

/// One predicted statistic. Rows with `cited` set record a stated closed
/// form kept for reference even though direct summation disagrees; they are
/// reported by `verify_example` but never load-bearing.
#[derive(Debug, Clone)]
pub struct Prediction {
    pub quantity: Quantity,
    pub label: &'static str,
    pub value: Rat,
    pub formula: &'static str,
    pub cited: bool,
}

/// A generated fixture: the set, its parameters (including the computed
/// separation offset under the key "sep"), and its predicted statistics.
#[derive(Debug, Clone)]
pub struct ExampleInstance {
    pub name: ExampleName,
    pub params: Vec<(&'static str, Rat)>,
    pub set: SetValue,
    pub predicted: Vec<Prediction>,
}

impl ExampleInstance {
    pub fn param(&self, key: &str) -> Option<&Rat> {
        self.params.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn intervals(&self) -> Result<&IntervalUnion> {
        match &self.set {
            SetValue::Interval(u) => Ok(u),
            _ => Err(Error::KindMismatch),
        }
    }

    /// The set grouped into fibers by multiples of the separation offset.
    pub fn fibered(&self) -> Result<FiberedSet> {
        let sep = self
            .param("sep")
            .ok_or_else(|| Error::Precondition("instance has no separation offset".into()))?;
        fibered_view(self.intervals()?, sep)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub label: &'static str,
    pub predicted: Rat,
    pub actual: Rat,
    pub matches: bool,
    pub cited: bool,
}

/// Diff of predicted against recomputed values; `pass` ignores cited rows.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

fn check_dim(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    Ok(())
}

fn pred(quantity: Quantity, label: &'static str, value: Rat, formula: &'static str) -> Prediction {
    Prediction { quantity, label, value, formula, cited: false }
}

/// Two separated boxes of volumes 1 - delta^2 and delta^2, total volume 1.
/// For k = 1 the set is an interval union; for k >= 2 both box sides
/// (1-delta^2)^(1/k) and (delta^2)^(1/k) must be rational so the boxes are
/// cell-aligned, otherwise the construction is rejected.
pub fn two_boxes(k: u32, delta: &Rat) -> Result<ExampleInstance> {
    check_dim(k)?;
    if delta <= &rzero() || delta >= &rint(1) {
        return Err(Error::Precondition("delta must lie strictly between 0 and 1".into()));
    }
    let d2 = delta * delta;
    let big = rint(1) - &d2;
    let (a, b) = if k == 1 {
        (big.clone(), d2.clone())
    } else {
        match (rat_nth_root_exact(&big, k), rat_nth_root_exact(&d2, k)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Precondition(format!(
                    "box sides are irrational in dimension {k} at this delta"
                )))
            }
        }
    };
    // One more than the widest component of A+A (the doubled big box).
    let sep = rint(2) * &a + rint(1);
    let set = if k == 1 {
        SetValue::Interval(IntervalUnion::new(vec![
            (rzero(), a.clone()),
            (sep.clone(), &sep + &b),
        ])?)
    } else {
        let zero = vec![rzero(); k as usize];
        let p1 = Polycube::from_box(&zero, &vec![a.clone(); k as usize])?;
        let p2 = Polycube::from_box(&zero, &vec![b.clone(); k as usize])?;
        let mut off = vec![rzero(); k as usize];
        off[0] = sep.clone();
        SetValue::Cube(p1.union(&p2.translate(&off)?)?)
    };
    let sum = rpow(&(rint(2) * &a), k) + rpow(&(&a + &b), k) + rpow(&(rint(2) * &b), k);
    let half = &sum / rpow(&rint(2), k);
    let mut predicted = vec![
        pred(Quantity::Size, "size", rint(1), "1"),
        pred(Quantity::SumsetSize, "sumset_size", sum, "(2a)^k + (a+b)^k + (2b)^k"),
        pred(Quantity::HalfSumsetSize, "half_sumset_size", half, "1 + ((a+b)/2)^k"),
        pred(Quantity::PieceBeyondSep, "small_box_size", d2.clone(), "delta^2"),
    ];
    if k == 1 {
        predicted.push(pred(Quantity::SumsetComponents, "sumset_components", rint(3), "3"));
    }
    Ok(ExampleInstance {
        name: ExampleName::TwoBoxes,
        params: vec![("k", rint(k as i64)), ("delta", delta.clone()), ("sep", sep)],
        set,
        predicted,
    })
}

/// Middle-component measure of (A+A)/2 for two boxes in dimension k, as the
/// exact power value ((1-delta^2)^(1/k)/2 + (delta^2)^(1/k)/2)^k. Valid for
/// every k, including those where the sides are irrational.
pub fn two_boxes_cross_term(k: u32, delta: &Rat) -> Result<PowVal> {
    check_dim(k)?;
    if delta <= &rzero() || delta >= &rint(1) {
        return Err(Error::Precondition("delta must lie strictly between 0 and 1".into()));
    }
    let d2 = delta * delta;
    let scale = rpow(&rat(1, 2), k);
    Ok(PowVal::new((rint(1) - &d2) * &scale, &d2 * &scale, k))
}

/// t translated copies of the box [0,1]^(k-1) x [0,1/t]; total volume 1,
/// |(A+A)/2| = 2 - 1/t in every dimension.
pub fn ap_boxes(k: u32, t: u32) -> Result<ExampleInstance> {
    check_dim(k)?;
    if t == 0 {
        return Err(Error::Precondition("need at least one box".into()));
    }
    let short = rat(1, t as i64);
    // The box extent along the translation axis.
    let width = if k == 1 { short.clone() } else { rint(1) };
    let sep = rint(2) * &width + rint(1);
    let set = if k == 1 {
        let parts: Vec<(Rat, Rat)> = (1..=t as i64)
            .map(|i| {
                let lo = rint(i) * &sep;
                let hi = &lo + &short;
                (lo, hi)
            })
            .collect();
        SetValue::Interval(IntervalUnion::new(parts)?)
    } else {
        let zero = vec![rzero(); k as usize];
        let mut hi = vec![rint(1); k as usize];
        hi[k as usize - 1] = short.clone();
        let block = Polycube::from_box(&zero, &hi)?;
        let mut acc: Option<Polycube> = None;
        for i in 1..=t as i64 {
            let mut off = vec![rzero(); k as usize];
            off[0] = rint(i) * &sep;
            let piece = block.translate(&off)?;
            acc = Some(match acc {
                Some(u) => u.union(&piece)?,
                None => piece,
            });
        }
        SetValue::Cube(acc.unwrap())
    };
    let sum = rint(2 * t as i64 - 1) * rpow(&rint(2), k) / rint(t as i64);
    let half = rint(2) - &short;
    let mut predicted = vec![
        pred(Quantity::Size, "size", rint(1), "1"),
        pred(Quantity::SumsetSize, "sumset_size", sum, "(2t-1) 2^k / t"),
        pred(Quantity::HalfSumsetSize, "half_sumset_size", half, "2 - 1/t"),
    ];
    if k == 1 {
        predicted.push(pred(
            Quantity::SumsetComponents,
            "sumset_components",
            rint(2 * t as i64 - 1),
            "2t - 1",
        ));
    }
    Ok(ExampleInstance {
        name: ExampleName::ApBoxes,
        params: vec![("k", rint(k as i64)), ("t", rint(t as i64)), ("sep", sep)],
        set,
        predicted,
    })
}

/// Unit block [0,1] plus ell separated points. The points carry no measure,
/// but their pairwise sums appear as degenerate extra components of A+A:
/// |A+A| = (2 + ell)|A| while the component count is 2 ell + 1.
pub fn scattered(ell: u32) -> Result<ExampleInstance> {
    if ell == 0 {
        return Err(Error::Precondition("need at least one scattered point".into()));
    }
    let sep = rint(3);
    let mut parts = vec![(rzero(), rint(1))];
    for i in 1..=ell as i64 {
        let p = rint(i) * &sep;
        parts.push((p.clone(), p));
    }
    let el = rint(ell as i64);
    let predicted = vec![
        pred(Quantity::Size, "size", rint(1), "|C|"),
        pred(Quantity::SumsetSize, "sumset_size", rint(2) + &el, "(2 + ell)|C|"),
        pred(Quantity::SumsetSolidComponents, "sumset_solid_components", rint(1) + &el, "1 + ell"),
        pred(Quantity::SumsetPointComponents, "sumset_point_components", el.clone(), "ell"),
        pred(Quantity::SumsetComponents, "sumset_components", rint(2) * &el + rint(1), "2 ell + 1"),
    ];
    Ok(ExampleInstance {
        name: ExampleName::Scattered,
        params: vec![("ell", el), ("sep", sep)],
        set: SetValue::Interval(IntervalUnion::new(parts)?),
        predicted,
    })
}

/// Integer model of the scattered family: the block {0..base-1} plus ell
/// separated points. Point sums with index sum beyond ell fall outside every
/// block, so #(A+A) = (2 base - 1) + ell base + ell.
pub fn scattered_lattice(base: u32, ell: u32) -> Result<ExampleInstance> {
    if base == 0 || ell == 0 {
        return Err(Error::Precondition("need a nonempty block and at least one point".into()));
    }
    let sep = 2 * base as i64 - 1;
    let mut vals: Vec<i64> = (0..base as i64).collect();
    for i in 1..=ell as i64 {
        vals.push(i * sep);
    }
    let (b, el) = (base as i64, ell as i64);
    let predicted = vec![
        pred(Quantity::Size, "size", rint(b + el), "base + ell"),
        pred(
            Quantity::SumsetSize,
            "sumset_size",
            rint((2 * b - 1) + el * b + el),
            "(2 base - 1) + ell base + ell",
        ),
    ];
    Ok(ExampleInstance {
        name: ExampleName::Scattered,
        params: vec![("base", rint(b)), ("ell", rint(el)), ("sep", rint(sep))],
        set: SetValue::Lattice(LatticeSet::from_values(&vals)),
        predicted,
    })
}

/// Cone over a progression: blocks [0,i]^k translated along a common
/// direction for i = 1..t. |A+A| satisfies the exact identity
/// 2^(k+1)|A| - sum_i [(2i)^k - (2i-1)^k] - 1.
pub fn cone(k: u32, t: u32) -> Result<ExampleInstance> {
    check_dim(k)?;
    if t == 0 {
        return Err(Error::Precondition("need at least one block".into()));
    }
    let sep = rint(2 * t as i64 + 1);
    let set = if k == 1 {
        let parts: Vec<(Rat, Rat)> = (1..=t as i64)
            .map(|i| {
                let lo = rint(i) * &sep;
                let hi = &lo + rint(i);
                (lo, hi)
            })
            .collect();
        SetValue::Interval(IntervalUnion::new(parts)?)
    } else {
        let zero = vec![rzero(); k as usize];
        let mut acc: Option<Polycube> = None;
        for i in 1..=t as i64 {
            let block = Polycube::from_box(&zero, &vec![rint(i); k as usize])?;
            let mut off = vec![rzero(); k as usize];
            off[0] = rint(i) * &sep;
            let piece = block.translate(&off)?;
            acc = Some(match acc {
                Some(u) => u.union(&piece)?,
                None => piece,
            });
        }
        SetValue::Cube(acc.unwrap())
    };
    let size: Rat = (1..=t as i64).map(|i| rpow(&rint(i), k)).fold(rzero(), |s, v| s + v);
    let sum: Rat = (2..=2 * t as i64).map(|s| rpow(&rint(s), k)).fold(rzero(), |s, v| s + v);
    let correction: Rat = (1..=t as i64)
        .map(|i| rpow(&rint(2 * i), k) - rpow(&rint(2 * i - 1), k))
        .fold(rzero(), |s, v| s + v);
    let identity = rpow(&rint(2), k + 1) * &size - correction - rint(1);
    let mut predicted = vec![
        pred(Quantity::Size, "size", size, "sum_{i=1}^{t} i^k"),
        pred(Quantity::SumsetSize, "sumset_size", sum, "sum_{s=2}^{2t} s^k"),
        pred(
            Quantity::SumsetSize,
            "sumset_size_identity",
            identity,
            "2^(k+1)|A| - sum_i [(2i)^k - (2i-1)^k] - 1",
        ),
    ];
    if k == 1 {
        predicted.push(pred(
            Quantity::SumsetComponents,
            "sumset_components",
            rint(2 * t as i64 - 1),
            "2t - 1",
        ));
    }
    Ok(ExampleInstance {
        name: ExampleName::Cone,
        params: vec![("k", rint(k as i64)), ("t", rint(t as i64)), ("sep", sep)],
        set,
        predicted,
    })
}

/// 2t+1 blocks whose lengths 1 + delta (1 - |i|/t) rise to a peak at the
/// centre (delta > 0) or dip to a trough (delta < 0). The widest component
/// of A+A at offset s comes from the widest admissible pair, which the
/// generator scans directly instead of trusting a closed form.
pub fn house(t: u32, delta: &Rat) -> Result<ExampleInstance> {
    if t == 0 {
        return Err(Error::Precondition("need a positive number of side blocks".into()));
    }
    if delta.is_zero() || delta.abs() >= rint(1) {
        return Err(Error::Precondition(
            "house slope must be nonzero and lie strictly between -1 and 1".into(),
        ));
    }
    let ti = t as i64;
    let len = |i: i64| -> Rat { rint(1) + delta * (rint(1) - rat(i.abs(), ti)) };
    let size: Rat = (-ti..=ti).map(&len).fold(rzero(), |s, v| s + v);
    let mut sum = rzero();
    let mut widest = rzero();
    for s in -2 * ti..=2 * ti {
        let mut best = rzero();
        for i in (-ti).max(s - ti)..=ti.min(s + ti) {
            let l = len(i) + len(s - i);
            if l > best {
                best = l;
            }
        }
        if best > widest {
            widest = best.clone();
        }
        sum += best;
    }
    let sep = &widest + rint(1);
    let parts: Vec<(Rat, Rat)> = (-ti..=ti)
        .map(|i| {
            let lo = rint(i) * &sep;
            let hi = &lo + len(i);
            (lo, hi)
        })
        .collect();
    let n = rint(2 * ti + 1);
    // A linear slot-length profile dominating a peak is cheapest held flat at
    // the apex; over a trough, flat at the rim.
    let apex = if delta.is_positive() { rint(1) + delta } else { rint(1) };
    let ap_excess = &n * apex - &size;
    let hull_excess = if delta.is_positive() { rzero() } else { -delta * rint(ti) };
    let dbl_excess = &sum / &size - rint(4) + rat(2, 2 * ti + 1);
    let mut predicted = vec![
        pred(Quantity::Size, "size", size.clone(), "(2t+1) + delta t"),
        pred(Quantity::SumsetSize, "sumset_size", sum.clone(), "sum of widest pair lengths"),
        pred(Quantity::SumsetComponents, "sumset_components", rint(4 * ti + 1), "4t + 1"),
        pred(
            Quantity::ApCoverExcess,
            "ap_cover_excess",
            ap_excess,
            "delta (t+1) at a peak, |delta| t at a trough",
        ),
        pred(
            Quantity::HullFiberExcess,
            "hull_fiber_excess",
            hull_excess,
            "0 at a peak, |delta| t at a trough",
        ),
        pred(
            Quantity::DoublingExcess,
            "doubling_excess",
            dbl_excess,
            "|A+A|/|A| - 4 + 2/(2t+1)",
        ),
    ];
    if delta.is_positive() {
        // The stated closed forms undercount: direct summation gives
        // (2t+1) + delta t and 2(4t+1) + 4 delta t. Both are kept; only the
        // direct values are load-bearing.
        predicted.push(Prediction {
            quantity: Quantity::Size,
            label: "size_closed_form",
            value: rint(2 * ti + 1) + delta * rint(ti - 1),
            formula: "(2t+1) + delta (t-1)",
            cited: true,
        });
        predicted.push(Prediction {
            quantity: Quantity::SumsetSize,
            label: "sumset_size_closed_form",
            value: rint(2 * (4 * ti + 1)) + rint(4) * delta * rint(ti - 1),
            formula: "2(4t+1) + 4 delta (t-1)",
            cited: true,
        });
    }
    Ok(ExampleInstance {
        name: ExampleName::House,
        params: vec![("t", rint(ti)), ("delta", delta.clone()), ("sep", sep)],
        set: SetValue::Interval(IntervalUnion::new(parts)?),
        predicted,
    })
}

/// Build an instance from a (key, value) parameter record, as the CLI does.
/// The dimension k defaults to 1; a "base" key switches the scattered family
/// to its integer model.
pub fn generate(name: ExampleName, params: &[(&str, Rat)]) -> Result<ExampleInstance> {
    let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| v);
    let get_u32 = |key: &str| -> Result<u32> {
        match get(key) {
            Some(v) if v.is_integer() && !v.is_negative() => v
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::Precondition(format!("parameter {key} is out of range"))),
            Some(_) => {
                Err(Error::Precondition(format!("parameter {key} must be a nonnegative integer")))
            }
            None => Err(Error::Precondition(format!("missing parameter {key}"))),
        }
    };
    let opt_k = || if get("k").is_some() { get_u32("k") } else { Ok(1) };
    let req = |key: &'static str| {
        get(key).ok_or_else(|| Error::Precondition(format!("missing parameter {key}")))
    };
    match name {
        ExampleName::TwoBoxes => two_boxes(opt_k()?, req("delta")?),
        ExampleName::ApBoxes => ap_boxes(opt_k()?, get_u32("t")?),
        ExampleName::Scattered => {
            if get("base").is_some() {
                scattered_lattice(get_u32("base")?, get_u32("ell")?)
            } else {
                scattered(get_u32("ell")?)
            }
        }
        ExampleName::Cone => cone(opt_k()?, get_u32("t")?),
        ExampleName::House => house(get_u32("t")?, req("delta")?),
    }
}

/// Group the components of an interval union into fibers by the multiple of
/// `sep` they start in. Fibers keep their global coordinates.
pub fn fibered_view(u: &IntervalUnion, sep: &Rat) -> Result<FiberedSet> {
    if sep <= &rzero() {
        return Err(Error::Precondition("separation offset must be positive".into()));
    }
    let mut groups: BTreeMap<i64, Vec<(Rat, Rat)>> = BTreeMap::new();
    for (lo, hi) in u.components() {
        let idx = rfloor(&(lo / sep))
            .to_i64()
            .ok_or_else(|| Error::Precondition("component offset overflows the fiber index".into()))?;
        groups.entry(idx).or_default().push((lo.clone(), hi.clone()));
    }
    let mut fibers = BTreeMap::new();
    for (i, parts) in groups {
        fibers.insert(i, IntervalUnion::new(parts)?);
    }
    FiberedSet::new(fibers)
}

/// Recompute every predicted quantity from the emitted set and diff. Cited
/// rows are compared and reported but do not affect `pass`.
pub fn verify_example(inst: &ExampleInstance) -> Result<VerifyReport> {
    let m = inst.set.size();
    let sum = inst.set.sumset(&inst.set)?;
    let mut rows = Vec::with_capacity(inst.predicted.len());
    let mut pass = true;
    for p in &inst.predicted {
        let actual = recompute(inst, p.quantity, &m, &sum)?;
        let matches = actual == p.value;
        if !matches && !p.cited {
            pass = false;
        }
        rows.push(VerifyRow {
            label: p.label,
            predicted: p.value.clone(),
            actual,
            matches,
            cited: p.cited,
        });
    }
    Ok(VerifyReport { rows, pass })
}

fn sum_intervals(sum: &SetValue) -> Result<&IntervalUnion> {
    match sum {
        SetValue::Interval(u) => Ok(u),
        _ => Err(Error::KindMismatch),
    }
}

fn recompute(inst: &ExampleInstance, q: Quantity, m: &Rat, sum: &SetValue) -> Result<Rat> {
    match q {
        Quantity::Size => Ok(m.clone()),
        Quantity::SumsetSize => Ok(sum.size()),
        Quantity::HalfSumsetSize => Ok(sum.divide(2)?.size()),
        Quantity::SumsetComponents
        | Quantity::SumsetSolidComponents
        | Quantity::SumsetPointComponents => {
            let comps = sum_intervals(sum)?.components();
            let solid = comps.iter().filter(|(lo, hi)| lo < hi).count();
            let n = match q {
                Quantity::SumsetComponents => comps.len(),
                Quantity::SumsetSolidComponents => solid,
                _ => comps.len() - solid,
            };
            Ok(rint(n as i64))
        }
        Quantity::PieceBeyondSep => {
            let sep = inst
                .param("sep")
                .ok_or_else(|| Error::Precondition("instance has no separation offset".into()))?;
            piece_beyond(&inst.set, sep)
        }
        Quantity::ApCoverExcess => {
            let f = inst.fibered()?;
            let cover = ap_cover(&f, f.fiber_count() as u32)?;
            Ok(&cover.total - m)
        }
        Quantity::HullFiberExcess => Ok(co11(&inst.fibered()?)?.1),
        Quantity::DoublingExcess => {
            let n = inst.intervals()?.components().len() as i64;
            Ok(sum.size() / m - rint(4) + rat(2, n))
        }
    }
}

fn piece_beyond(set: &SetValue, sep: &Rat) -> Result<Rat> {
    match set {
        SetValue::Interval(u) => Ok(u
            .components()
            .iter()
            .filter(|(lo, _)| lo >= sep)
            .fold(rzero(), |acc, (lo, hi)| acc + (hi - lo))),
        SetValue::Cube(p) => {
            let scale = p.scale().clone();
            let n = p.cells().points().iter().filter(|c| rint(c[0]) * &scale >= *sep).count();
            Ok(rint(n as i64) * rpow(&scale, p.dim() as u32))
        }
        SetValue::Lattice(_) => Err(Error::KindMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn report(inst: &ExampleInstance) -> VerifyReport {
        verify_example(inst).unwrap()
    }

    fn predicted<'a>(inst: &'a ExampleInstance, label: &str) -> &'a Rat {
        &inst.predicted.iter().find(|p| p.label == label).unwrap().value
    }

    fn row<'a>(r: &'a VerifyReport, label: &str) -> &'a VerifyRow {
        r.rows.iter().find(|v| v.label == label).unwrap()
    }

    #[test]
    fn two_boxes_line_half_sumset_is_three_halves() {
        for d in [rat(1, 5), rat(3, 5)] {
            let inst = two_boxes(1, &d).unwrap();
            assert_eq!(predicted(&inst, "half_sumset_size"), &rat(3, 2));
            assert_eq!(predicted(&inst, "small_box_size"), &(&d * &d));
            let r = report(&inst);
            assert!(r.pass, "{:?}", r.rows);
        }
        let inst = two_boxes(1, &rat(3, 5)).unwrap();
        assert_eq!(inst.intervals().unwrap().components().len(), 2);
    }

    #[test]
    fn two_boxes_plane_with_rational_sides() {
        // delta = 3/5: sides 4/5 and 3/5, cross term (7/10)^2.
        let inst = two_boxes(2, &rat(3, 5)).unwrap();
        assert_eq!(inst.set.size(), rint(1));
        assert_eq!(predicted(&inst, "sumset_size"), &rat(149, 25));
        assert_eq!(predicted(&inst, "half_sumset_size"), &rat(149, 100));
        assert_eq!(predicted(&inst, "small_box_size"), &rat(9, 25));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn two_boxes_irrational_sides_rejected() {
        assert!(two_boxes(2, &rat(1, 5)).is_err());
        assert!(two_boxes(3, &rat(3, 5)).is_err());
    }

    #[test]
    fn two_boxes_parameter_range() {
        assert!(two_boxes(1, &rzero()).is_err());
        assert!(two_boxes(1, &rint(1)).is_err());
        assert!(two_boxes(0, &rat(1, 2)).is_err());
    }

    #[test]
    fn cross_term_line_value_is_half() {
        let t = two_boxes_cross_term(1, &rat(3, 5)).unwrap();
        assert_eq!(t.exact(), Some(rat(1, 2)));
    }

    #[test]
    fn cross_term_decreases_toward_its_limit() {
        for d in [rat(1, 5), rat(3, 5)] {
            let d2 = &d * &d;
            let limit = &d2 * (rint(1) - &d2);
            let terms: Vec<PowVal> =
                (1..=4).map(|k| two_boxes_cross_term(k, &d).unwrap()).collect();
            for w in terms.windows(2) {
                assert_eq!(w[0].cmp(&w[1]).unwrap(), core::cmp::Ordering::Greater);
            }
            for t in &terms {
                // t^2 > delta^2 (1 - delta^2), i.e. t exceeds the k -> oo limit.
                let squared = PowVal::new(&t.a * &t.a, &t.b * &t.b, 2 * t.m);
                assert_eq!(squared.cmp_rat(&limit).unwrap(), core::cmp::Ordering::Less);
            }
        }
    }

    #[test]
    fn ap_boxes_line_examples() {
        for (t, want) in [(2u32, rat(3, 2)), (3, rat(5, 3)), (5, rat(9, 5))] {
            let inst = ap_boxes(1, t).unwrap();
            assert_eq!(predicted(&inst, "half_sumset_size"), &want);
            assert_eq!(
                predicted(&inst, "sumset_components"),
                &rint(2 * t as i64 - 1)
            );
            let r = report(&inst);
            assert!(r.pass, "t = {t}: {:?}", r.rows);
        }
    }

    #[test]
    fn ap_boxes_plane_example() {
        let inst = ap_boxes(2, 2).unwrap();
        assert_eq!(inst.set.size(), rint(1));
        assert_eq!(predicted(&inst, "half_sumset_size"), &rat(3, 2));
        assert!(report(&inst).pass);
    }

    #[test]
    fn cone_line_examples() {
        let inst = cone(1, 3).unwrap();
        assert_eq!(predicted(&inst, "size"), &rint(6));
        assert_eq!(predicted(&inst, "sumset_size"), &rint(20));
        assert_eq!(predicted(&inst, "sumset_size_identity"), &rint(20));
        assert!(report(&inst).pass);

        let inst = cone(1, 5).unwrap();
        assert_eq!(predicted(&inst, "size"), &rint(15));
        assert_eq!(predicted(&inst, "sumset_size"), &rint(54));
        assert!(report(&inst).pass);
    }

    #[test]
    fn cone_plane_example() {
        let inst = cone(2, 3).unwrap();
        assert_eq!(predicted(&inst, "size"), &rint(14));
        assert_eq!(predicted(&inst, "sumset_size"), &rint(90));
        assert_eq!(predicted(&inst, "sumset_size_identity"), &rint(90));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn scattered_line_counts() {
        let inst = scattered(2).unwrap();
        assert_eq!(predicted(&inst, "sumset_size"), &rint(4));
        assert_eq!(predicted(&inst, "sumset_solid_components"), &rint(3));
        assert_eq!(predicted(&inst, "sumset_point_components"), &rint(2));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn scattered_lattice_counts() {
        let inst = scattered_lattice(10, 2).unwrap();
        assert_eq!(predicted(&inst, "size"), &rint(12));
        assert_eq!(predicted(&inst, "sumset_size"), &rint(41));
        assert!(report(&inst).pass);

        // Degenerate block: the family collapses to consecutive points and
        // the count formula still holds.
        let inst = scattered_lattice(1, 2).unwrap();
        assert_eq!(predicted(&inst, "sumset_size"), &rint(5));
        assert!(report(&inst).pass);
    }

    #[test]
    fn house_peak_rows() {
        let inst = house(1, &rat(1, 10)).unwrap();
        assert_eq!(predicted(&inst, "size"), &rat(31, 10));
        assert_eq!(predicted(&inst, "sumset_size"), &rat(52, 5));
        assert_eq!(predicted(&inst, "sumset_components"), &rint(5));
        assert_eq!(predicted(&inst, "ap_cover_excess"), &rat(1, 5));
        assert_eq!(predicted(&inst, "hull_fiber_excess"), &rzero());
        assert_eq!(predicted(&inst, "doubling_excess"), &rat(2, 93));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
        // The stated closed forms undercount by delta and 4 delta.
        let cited = row(&r, "size_closed_form");
        assert!(cited.cited && !cited.matches);
        assert_eq!(cited.predicted, rint(3));
        let cited = row(&r, "sumset_size_closed_form");
        assert!(cited.cited && !cited.matches);
        assert_eq!(cited.predicted, rint(10));
    }

    #[test]
    fn house_wider_peak_rows() {
        let inst = house(2, &rat(1, 100)).unwrap();
        assert_eq!(predicted(&inst, "size"), &rat(251, 50));
        assert_eq!(predicted(&inst, "sumset_size"), &rat(452, 25));
        assert_eq!(predicted(&inst, "sumset_components"), &rint(9));
        assert_eq!(predicted(&inst, "ap_cover_excess"), &rat(3, 100));
        assert_eq!(predicted(&inst, "doubling_excess"), &rat(2, 1255));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn house_trough_rows() {
        // Negative slope notches the middle block; the fiber hull must fill
        // the notch and the cover excess flips to |delta| t.
        let inst = house(1, &rat(-1, 100)).unwrap();
        assert_eq!(predicted(&inst, "size"), &rat(299, 100));
        assert_eq!(predicted(&inst, "sumset_size"), &rat(499, 50));
        assert_eq!(predicted(&inst, "hull_fiber_excess"), &rat(1, 100));
        assert_eq!(predicted(&inst, "ap_cover_excess"), &rat(1, 100));
        assert_eq!(predicted(&inst, "doubling_excess"), &rat(4, 897));
        assert!(inst.predicted.iter().all(|p| !p.cited));
        let r = report(&inst);
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn house_parameter_range() {
        assert!(house(0, &rat(1, 10)).is_err());
        assert!(house(1, &rzero()).is_err());
        assert!(house(1, &rint(1)).is_err());
        assert!(house(1, &rint(-1)).is_err());
    }

    #[test]
    fn fibered_view_groups_components() {
        let inst = house(2, &rat(1, 10)).unwrap();
        let f = inst.fibered().unwrap();
        assert_eq!(f.indices(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(f.fiber(0).unwrap().measure(), rat(11, 10));
        assert_eq!(f.fiber(2).unwrap().measure(), rint(1));
        assert_eq!(f.measure(), inst.set.size());
    }

    #[test]
    fn generate_dispatches_on_name_and_params() {
        let direct = house(2, &rat(1, 100)).unwrap();
        let via = generate(ExampleName::House, &[("t", rint(2)), ("delta", rat(1, 100))]).unwrap();
        assert_eq!(via.predicted.len(), direct.predicted.len());
        for (a, b) in via.predicted.iter().zip(direct.predicted.iter()) {
            assert_eq!(a.label, b.label);
            assert_eq!(a.value, b.value);
        }

        let lat = generate(ExampleName::Scattered, &[("ell", rint(2)), ("base", rint(10))]).unwrap();
        assert!(matches!(lat.set, SetValue::Lattice(_)));
        let cts = generate(ExampleName::Scattered, &[("ell", rint(2))]).unwrap();
        assert!(matches!(cts.set, SetValue::Interval(_)));

        assert!(generate(ExampleName::House, &[("t", rint(2))]).is_err());
        assert!(generate(ExampleName::Cone, &[("t", rat(1, 2))]).is_err());
        assert_eq!(ExampleName::parse("cone"), Some(ExampleName::Cone));
        assert_eq!(ExampleName::parse("pyramid"), None);
    }

    #[test]
    fn base_sets_have_the_expected_component_counts() {
        let tb = two_boxes(1, &rat(2, 7)).unwrap();
        assert_eq!(tb.intervals().unwrap().components().len(), 2);
        let ab = ap_boxes(1, 4).unwrap();
        assert_eq!(ab.intervals().unwrap().components().len(), 4);
        let cn = cone(1, 4).unwrap();
        assert_eq!(cn.intervals().unwrap().components().len(), 4);
        let hs = house(3, &rat(1, 4)).unwrap();
        assert_eq!(hs.intervals().unwrap().components().len(), 7);
        let sc = scattered(3).unwrap();
        assert_eq!(sc.intervals().unwrap().components().len(), 4);
    }

    fn small_slope() -> impl Strategy<Value = Rat> {
        (1i64..=9, 10i64..=40, proptest::bool::ANY)
            .prop_map(|(p, q, neg)| if neg { rat(-p, q) } else { rat(p, q) })
    }

    proptest! {
        #[test]
        fn prop_two_boxes_line_verifies(p in 1i64..=9, q in 10i64..=20) {
            let inst = two_boxes(1, &rat(p, q)).unwrap();
            prop_assert!(report(&inst).pass);
        }

        #[test]
        fn prop_ap_boxes_verifies(t in 1u32..=8) {
            let inst = ap_boxes(1, t).unwrap();
            prop_assert!(report(&inst).pass);
        }

        #[test]
        fn prop_cone_verifies(t in 1u32..=6, k in 1u32..=2) {
            let inst = cone(k, t).unwrap();
            prop_assert!(report(&inst).pass);
        }

        #[test]
        fn prop_scattered_verifies(ell in 1u32..=5) {
            let inst = scattered(ell).unwrap();
            prop_assert!(report(&inst).pass);
        }

        #[test]
        fn prop_scattered_lattice_verifies(base in 1u32..=8, ell in 1u32..=4) {
            let inst = scattered_lattice(base, ell).unwrap();
            prop_assert!(report(&inst).pass);
        }

        #[test]
        fn prop_house_verifies(t in 1u32..=2, d in small_slope()) {
            let inst = house(t, &d).unwrap();
            prop_assert!(report(&inst).pass);
        }
    }
}
