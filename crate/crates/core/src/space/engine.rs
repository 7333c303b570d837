//! Single-pass bottom-up bound propagation.
//!
//! Every node is visited once. Rules fire in preference order (exact values,
//! equalities, max/monotonicity, ordinal sums, caps); each application that
//! tightens the interval is recorded. Unknowns stay at the vacuous interval
//! `[-1, Omega]`, so disabling rules can only widen results.

use super::attrs::{infer_node, Attributes};
use super::dim::{DimBound, DimValue, HdClass, RuleApplication};
use super::rules::find;
use super::{Declared, Rat, SpaceError, SpaceExpr};
use crate::dsl;
use crate::ordinal::Ordinal;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

/// Which catalog rules the engine may use. Default: all of them.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    disabled: BTreeSet<&'static str>,
}

impl RuleSet {
    pub fn all() -> RuleSet {
        RuleSet::default()
    }

    /// Disables a rule by catalog name.
    pub fn without(mut self, name: &'static str) -> RuleSet {
        self.disabled.insert(name);
        self
    }

    fn enabled(&self, name: &str) -> bool {
        !self.disabled.contains(name)
    }
}

/// Everything the engine derives for one expression.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub attrs: Attributes,
    pub d: DimBound,
    pub tdhd: DimBound,
    pub hd: HdClass,
}

impl Evaluation {
    /// Full derivation, bottom-up: the D trace followed by the variant trace.
    pub fn full_trace(&self) -> Vec<(&'static str, &RuleApplication)> {
        self.d
            .trace
            .iter()
            .map(|r| ("D", r))
            .chain(self.tdhd.trace.iter().map(|r| ("tDHD", r)))
            .collect()
    }
}

pub fn evaluate(expr: &SpaceExpr) -> Result<Evaluation, SpaceError> {
    evaluate_with(expr, &RuleSet::all())
}

pub fn evaluate_with(expr: &SpaceExpr, rules: &RuleSet) -> Result<Evaluation, SpaceError> {
    expr.validate_shape()?;
    let node = eval_rec(expr, &Declared::default(), rules)?;
    node.finish()
}

/// Bounds on the D-dimension of `expr`, with the derivation trace.
pub fn d_bounds(expr: &SpaceExpr) -> Result<DimBound, SpaceError> {
    Ok(evaluate(expr)?.d)
}

/// Bounds on the D-variant of transfinite Hausdorff dimension of `expr`.
pub fn tdhd_bounds(expr: &SpaceExpr) -> Result<DimBound, SpaceError> {
    Ok(evaluate(expr)?.tdhd)
}

/// What is known about the classical Hausdorff dimension of `expr`.
pub fn hd_class(expr: &SpaceExpr) -> Result<HdClass, SpaceError> {
    Ok(evaluate(expr)?.hd)
}

/// Inferred compactness/separability/weight of `expr`.
pub fn infer_attributes(expr: &SpaceExpr) -> Result<Attributes, SpaceError> {
    Ok(evaluate(expr)?.attrs)
}

/// Guaranteed dimensions of closed subspaces, from the coarse intermediate
/// dimension property: for `d` with value `v` and `a <= lim(v)` there is a
/// closed subspace of dimension `(lim(v) - a) + k` for some finite `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateTargets {
    /// `lim(v) - a`; the guaranteed values are `base + k`, `k` finite.
    pub base: Ordinal,
    /// Set when the guarantee degrades (limit values at or above `w^2`).
    pub caveat: Option<&'static str>,
}

const INTERMEDIATE_CAVEAT: &str = "above w^2 the subspace guarantee can skip limit levels; \
     the base value is still attained up to a finite shift";

pub fn intermediate_targets(
    d: &DimValue,
    alpha: &Ordinal,
) -> Result<IntermediateTargets, SpaceError> {
    let value = match d {
        DimValue::Ordinal(v) => v,
        other => {
            return Err(SpaceError::Domain(format!(
                "intermediate targets need an ordinal dimension value, got {other}"
            )))
        }
    };
    let limit = value.limit_part();
    if *alpha > limit {
        return Err(SpaceError::Domain(format!(
            "offset {alpha} exceeds the limit part {limit}"
        )));
    }
    let base = limit.sub_left(alpha)?;
    let omega_sq = Ordinal::omega_power(&Ordinal::nat(2)).expect("small exponent");
    let caveat = (limit >= omega_sq).then_some(INTERMEDIATE_CAVEAT);
    Ok(IntermediateTargets { base, caveat })
}

// ---------------------------------------------------------------------------
// accumulation
// ---------------------------------------------------------------------------

struct Acc {
    lower: DimValue,
    upper: DimValue,
    strict: bool,
    trace: Vec<RuleApplication>,
}

impl Acc {
    fn vacuous() -> Acc {
        Acc {
            lower: DimValue::NegOne,
            upper: DimValue::Omega,
            strict: false,
            trace: Vec::new(),
        }
    }

    fn interval(&self) -> String {
        let close = if self.strict { ")" } else { "]" };
        format!("[{}, {}{close}", self.lower, self.upper)
    }

    fn record(
        &mut self,
        rule: &'static str,
        subject: &str,
        inputs: Vec<String>,
        note: Option<String>,
    ) {
        self.trace.push(RuleApplication {
            rule,
            anchor: find(rule).anchor,
            subject: subject.to_string(),
            inputs,
            output: self.interval(),
            note,
        });
    }

    fn finish(self) -> Result<DimBound, SpaceError> {
        if self.lower > self.upper {
            return Err(SpaceError::InconsistentBounds(format!(
                "lower {} exceeds upper {}",
                self.lower, self.upper
            )));
        }
        if self.strict && self.lower == self.upper {
            return Err(SpaceError::InconsistentBounds(format!(
                "strict upper {} meets the lower bound",
                self.upper
            )));
        }
        Ok(DimBound {
            lower: self.lower,
            upper: self.upper,
            upper_strict: self.strict,
            trace: self.trace,
        })
    }
}

/// One rule application against an accumulator; records only refinements.
struct Ctx<'a> {
    rules: &'a RuleSet,
    subject: String,
}

impl Ctx<'_> {
    fn lower(
        &self,
        acc: &mut Acc,
        rule: &'static str,
        inputs: Vec<String>,
        v: DimValue,
        note: Option<String>,
    ) {
        if !self.rules.enabled(rule) || v <= acc.lower {
            return;
        }
        acc.lower = v;
        acc.record(rule, &self.subject, inputs, note);
    }

    fn upper(
        &self,
        acc: &mut Acc,
        rule: &'static str,
        inputs: Vec<String>,
        v: DimValue,
        strict: bool,
        note: Option<String>,
    ) {
        if !self.rules.enabled(rule) {
            return;
        }
        let tighter = v < acc.upper || (v == acc.upper && strict && !acc.strict);
        if !tighter {
            return;
        }
        acc.upper = v;
        acc.strict = strict;
        acc.record(rule, &self.subject, inputs, note);
    }

    fn exact(
        &self,
        acc: &mut Acc,
        rule: &'static str,
        inputs: Vec<String>,
        v: DimValue,
        note: Option<String>,
    ) {
        self.both(acc, rule, inputs, v.clone(), v, false, note);
    }

    /// Two-sided refinement recorded as a single application.
    fn both(
        &self,
        acc: &mut Acc,
        rule: &'static str,
        inputs: Vec<String>,
        lower: DimValue,
        upper: DimValue,
        strict: bool,
        note: Option<String>,
    ) {
        if !self.rules.enabled(rule) {
            return;
        }
        let lower_improves = lower > acc.lower;
        let upper_improves =
            upper < acc.upper || (upper == acc.upper && strict && !acc.strict);
        if !lower_improves && !upper_improves {
            return;
        }
        if lower_improves {
            acc.lower = lower;
        }
        if upper_improves {
            acc.upper = upper;
            acc.strict = strict;
        }
        acc.record(rule, &self.subject, inputs, note);
    }
}

struct NodeEval {
    attrs: Attributes,
    hd_fin: Option<HdClass>,
    d: Acc,
    tdhd: Acc,
}

impl NodeEval {
    fn finish(self) -> Result<Evaluation, SpaceError> {
        let d = self.d.finish()?;
        let tdhd = self.tdhd.finish()?;
        let hd = if tdhd.lower.is_at_least_omega() {
            if matches!(
                self.hd_fin,
                Some(HdClass::FiniteExactly(_)) | Some(HdClass::FiniteAtMost(_))
            ) {
                return Err(SpaceError::InconsistentBounds(
                    "a finite Hausdorff dimension coexists with a variant lower bound >= w"
                        .into(),
                ));
            }
            HdClass::Infinite
        } else {
            self.hd_fin.unwrap_or(HdClass::Unknown)
        };
        Ok(Evaluation {
            attrs: self.attrs,
            d,
            tdhd,
            hd,
        })
    }

    fn nonempty(&self) -> bool {
        self.d.lower >= DimValue::nat(0) || self.tdhd.lower >= DimValue::nat(0)
    }
}

// ---------------------------------------------------------------------------
// dimension-value helpers
// ---------------------------------------------------------------------------

/// `lim(a) + max{fin(a), b}`, the closed-excision form. `None` when the
/// operands give no information or the sum leaves the representation.
fn excision_form(a: &DimValue, b: &DimValue) -> Option<DimValue> {
    match (a, b) {
        (DimValue::Omega, _) | (_, DimValue::Omega) => None,
        (DimValue::NegOne, b) => Some(b.clone()),
        (a, DimValue::NegOne) => Some(a.clone()),
        (DimValue::Ordinal(a), DimValue::Ordinal(b)) => {
            let dec = a.decompose();
            let fin = Ordinal::nat(dec.finite_part);
            let m = if fin >= *b { fin } else { b.clone() };
            dec.limit_part.checked_add(&m).ok().map(DimValue::Ordinal)
        }
    }
}

/// Plain ordinal sum on dimension values: the coarse second excision form
/// `D(X\F) + D(F)`.
pub fn naive_sum(a: &DimValue, b: &DimValue) -> Option<DimValue> {
    match (a, b) {
        (DimValue::Omega, _) | (_, DimValue::Omega) => None,
        (DimValue::NegOne, b) => Some(b.clone()),
        (a, DimValue::NegOne) => Some(a.clone()),
        (DimValue::Ordinal(a), DimValue::Ordinal(b)) => {
            a.checked_add(b).ok().map(DimValue::Ordinal)
        }
    }
}

/// The sharper first excision form, exposed so the two routes can be
/// compared against each other.
pub fn excision_upper(a: &DimValue, b: &DimValue) -> Option<DimValue> {
    excision_form(a, b)
}

/// Maximum of part uppers; strict only when every part attaining the
/// maximum is itself strict.
fn max_upper(parts: &[(&DimValue, bool)]) -> (DimValue, bool) {
    let m = parts
        .iter()
        .map(|(v, _)| (*v).clone())
        .max()
        .unwrap_or(DimValue::NegOne);
    let strict = parts
        .iter()
        .filter(|(v, _)| **v == m)
        .all(|(_, s)| *s);
    (m, strict)
}

fn max_lower<'a>(parts: impl Iterator<Item = &'a DimValue>) -> DimValue {
    parts.cloned().max().unwrap_or(DimValue::NegOne)
}

fn floor_of(h: &Rat) -> Option<DimValue> {
    h.floor().to_integer().to_u64().map(DimValue::nat)
}

/// Largest finite rational bound, for composing Hausdorff classes.
fn hd_join(parts: &[Option<HdClass>]) -> Option<HdClass> {
    let mut all_exact = true;
    let mut best: Option<Rat> = None;
    for p in parts {
        let v = match p {
            Some(HdClass::FiniteExactly(v)) => v,
            Some(HdClass::FiniteAtMost(v)) => {
                all_exact = false;
                v
            }
            _ => return None,
        };
        best = Some(match best {
            Some(b) if b >= *v => b,
            _ => v.clone(),
        });
    }
    let v = best?;
    Some(if all_exact {
        HdClass::FiniteExactly(v)
    } else {
        HdClass::FiniteAtMost(v)
    })
}

fn omega_one() -> Ordinal {
    Ordinal::initial(&Ordinal::nat(1)).expect("index 1")
}

/// `w_(t)` for `t` least with `alpha < w_t`.
fn tower_cap(alpha: &Ordinal) -> Option<Ordinal> {
    match alpha {
        Ordinal::Small(_) => Some(omega_one()),
        Ordinal::InitialPlus { index, .. } => {
            Ordinal::initial(&Ordinal::Small(index.succ())).ok()
        }
    }
}

// ---------------------------------------------------------------------------
// the walk
// ---------------------------------------------------------------------------

fn eval_rec(
    expr: &SpaceExpr,
    extra: &Declared,
    rules: &RuleSet,
) -> Result<NodeEval, SpaceError> {
    if let SpaceExpr::WithAttrs { inner, attrs } = expr {
        let merged = attrs.merged(extra)?;
        return eval_rec(inner, &merged, rules);
    }

    let children: Vec<NodeEval> = child_exprs(expr)
        .into_iter()
        .map(|c| eval_rec(c, &Declared::default(), rules))
        .collect::<Result<_, _>>()?;

    let child_attrs: Vec<Attributes> = children.iter().map(|c| c.attrs.clone()).collect();
    let attrs = infer_node(expr, &child_attrs, extra)?;
    let hd_fin = hd_structural(expr, &children, extra)?;

    let ctx = Ctx {
        rules,
        subject: dsl::pretty(expr),
    };

    let mut d = Acc::vacuous();
    let mut t = Acc::vacuous();
    for c in &children {
        d.trace.extend(c.d.trace.iter().cloned());
        t.trace.extend(c.tdhd.trace.iter().cloned());
    }

    apply_d_rules(expr, &children, &ctx, &mut d);
    if let Some(h) = finite_hd_value(&hd_fin) {
        if let Some(fl) = floor_of(h) {
            ctx.upper(&mut d, "hd_floor", vec![format!("HD = {h}")], fl, false, None);
        }
    }

    apply_tdhd_rules(expr, &children, &attrs, &ctx, &mut t);
    ctx.lower(
        &mut t,
        "tdhd_from_d",
        vec![format!("D lower {}", d.lower)],
        d.lower.clone(),
        None,
    );
    if let Some(h) = finite_hd_value(&hd_fin) {
        if let Some(fl) = floor_of(h) {
            ctx.upper(&mut t, "hd_floor", vec![format!("HD = {h}")], fl, false, None);
        }
    }
    // the cardinality cap is gated on a proved D(X) < Omega
    if d.upper != DimValue::Omega {
        if let Ok(idx) = attrs.weight.successor() {
            if let Ok(cap) = idx.initial_ordinal() {
                ctx.upper(
                    &mut t,
                    "weight_cap",
                    vec![
                        format!("weight <= {}", attrs.weight),
                        format!("D upper {}", d.upper),
                    ],
                    DimValue::Ordinal(cap),
                    false,
                    None,
                );
            }
        }
    }

    Ok(NodeEval {
        attrs,
        hd_fin,
        d,
        tdhd: t,
    })
}

fn child_exprs(expr: &SpaceExpr) -> Vec<&SpaceExpr> {
    use SpaceExpr::*;
    match expr {
        Empty | Point | Cube(_) | FatCantor(_) | Smirnov(_) | SmirnovCantor(_)
        | DenseSubset(_) => Vec::new(),
        Product(a, b) => vec![a, b],
        ClosedUnion(parts)
        | LocallyFiniteClosedUnion { parts, .. }
        | AlexandrovSum { parts, .. } => parts.iter().collect(),
        Augment(inner) | SubspaceOf(inner) => vec![inner],
        Excision {
            complement,
            closed_part,
        } => vec![complement, closed_part],
        WithAttrs { .. } => unreachable!("unwrapped before recursion"),
    }
}

fn finite_hd_value(hd: &Option<HdClass>) -> Option<&Rat> {
    match hd {
        Some(HdClass::FiniteExactly(v)) | Some(HdClass::FiniteAtMost(v)) => Some(v),
        _ => None,
    }
}

fn apply_d_rules(expr: &SpaceExpr, children: &[NodeEval], ctx: &Ctx<'_>, d: &mut Acc) {
    use SpaceExpr::*;
    match expr {
        Empty => ctx.exact(d, "empty_dim", vec![], DimValue::NegOne, None),
        Point => ctx.exact(d, "point_dim", vec![], DimValue::nat(0), None),
        Cube(n) => ctx.exact(d, "cube_dim", vec![], DimValue::nat(u64::from(*n)), None),
        FatCantor(_) => ctx.exact(d, "fat_cantor_dim", vec![], DimValue::nat(0), None),
        Smirnov(alpha) => ctx.exact(
            d,
            "smirnov_exact",
            vec![],
            DimValue::Ordinal(alpha.clone()),
            None,
        ),
        SmirnovCantor(alpha) => {
            let note = matches!(alpha, Ordinal::InitialPlus { .. }).then(|| {
                "level at or above w_1: rests on the final-theorem extension of the \
                 zero-dimensionality induction"
                    .to_string()
            });
            ctx.exact(d, "smirnov_cantor_zero", vec![], DimValue::nat(0), note);
        }
        DenseSubset(alpha) => {
            ctx.both(
                d,
                "dense_subset_bounds",
                vec![format!("D(S_a) = {alpha}"), "nonempty dense subset".into()],
                DimValue::nat(0),
                DimValue::Ordinal(alpha.clone()),
                false,
                None,
            );
        }
        Product(..) => {
            if children.iter().all(NodeEval::nonempty) {
                let lo = max_lower(children.iter().map(|c| &c.d.lower));
                let inputs = children.iter().map(|c| c.d.interval()).collect();
                ctx.lower(d, "product_embeds", inputs, lo, None);
            }
        }
        ClosedUnion(_) => {
            let inputs: Vec<String> = children.iter().map(|c| c.d.interval()).collect();
            let lo = max_lower(children.iter().map(|c| &c.d.lower));
            let ups: Vec<(&DimValue, bool)> =
                children.iter().map(|c| (&c.d.upper, c.d.strict)).collect();
            let (up, strict) = max_upper(&ups);
            ctx.both(d, "closed_union_max_d", inputs, lo, up, strict, None);
        }
        LocallyFiniteClosedUnion { unbounded, .. } => {
            let inputs: Vec<String> = children.iter().map(|c| c.d.interval()).collect();
            let note = unbounded.then(|| {
                "unbounded family: the listed parts repeat countably, so the supremum \
                 over the family is the maximum over the prototypes"
                    .to_string()
            });
            let lo = max_lower(children.iter().map(|c| &c.d.lower));
            let ups: Vec<(&DimValue, bool)> =
                children.iter().map(|c| (&c.d.upper, c.d.strict)).collect();
            let (up, strict) = max_upper(&ups);
            ctx.both(d, "locally_finite_sum_d", inputs, lo, up, strict, note);
        }
        Augment(_) => {
            let core = &children[0];
            if core.nonempty() {
                ctx.both(
                    d,
                    "countable_augment_d",
                    vec![core.d.interval()],
                    core.d.lower.clone(),
                    core.d.upper.clone(),
                    core.d.strict,
                    None,
                );
            } else {
                let zero = DimValue::nat(0);
                let (up, strict) = if core.d.upper > zero {
                    (core.d.upper.clone(), core.d.strict)
                } else {
                    (zero, false)
                };
                ctx.upper(d, "augment_widen", vec![core.d.interval()], up, strict, None);
            }
        }
        Excision { .. } => {
            let (c, f) = (&children[0], &children[1]);
            let inputs = vec![c.d.interval(), f.d.interval()];
            let lo = max_lower([&c.d.lower, &f.d.lower].into_iter());
            ctx.lower(d, "subspace_monotone", inputs.clone(), lo, None);
            if let Some(up) = excision_form(&c.d.upper, &f.d.upper) {
                ctx.upper(d, "excision_d", inputs, up, false, None);
            }
        }
        AlexandrovSum { repeated, .. } => {
            let inputs: Vec<String> = children.iter().map(|c| c.d.interval()).collect();
            let note = repeated.then(|| "prototypes repeat countably".to_string());
            let zero = DimValue::nat(0);
            let lo = max_lower(
                children
                    .iter()
                    .map(|c| &c.d.lower)
                    .chain(std::iter::once(&zero)),
            );
            let ups: Vec<(&DimValue, bool)> =
                children.iter().map(|c| (&c.d.upper, c.d.strict)).collect();
            let (up, strict) = max_upper(&ups);
            let (up, strict) = if up > zero { (up, strict) } else { (zero, false) };
            ctx.both(d, "alexandrov_d", inputs, lo, up, strict, note);
        }
        SubspaceOf(_) => {
            let p = &children[0];
            ctx.upper(
                d,
                "subspace_monotone",
                vec![p.d.interval()],
                p.d.upper.clone(),
                p.d.strict,
                None,
            );
        }
        WithAttrs { .. } => unreachable!(),
    }
}

fn apply_tdhd_rules(
    expr: &SpaceExpr,
    children: &[NodeEval],
    attrs: &Attributes,
    ctx: &Ctx<'_>,
    t: &mut Acc,
) {
    use SpaceExpr::*;
    match expr {
        Empty => ctx.exact(t, "empty_tdhd", vec![], DimValue::NegOne, None),
        Point => ctx.exact(t, "point_tdhd", vec![], DimValue::nat(0), None),
        Cube(_) => {} // floor and link rules pin the cell exactly
        FatCantor(measure) => {
            ctx.lower(
                t,
                "fat_cantor_onto_interval",
                vec![format!("measure {measure}")],
                DimValue::nat(1),
                None,
            );
        }
        Smirnov(alpha) => {
            if matches!(alpha, Ordinal::Small(_)) {
                ctx.upper(
                    t,
                    "smirnov_tdhd_cap",
                    vec![format!("a = {alpha} below w_1")],
                    DimValue::Ordinal(omega_one()),
                    true,
                    None,
                );
            }
        }
        SmirnovCantor(alpha) => {
            ctx.lower(
                t,
                "smirnov_cantor_lower",
                vec![format!("D(S_a) = {alpha}")],
                DimValue::Ordinal(alpha.clone()),
                None,
            );
            match alpha {
                Ordinal::Small(_) => ctx.upper(
                    t,
                    "smirnov_cantor_cap",
                    vec![format!("a = {alpha} below w_1")],
                    DimValue::Ordinal(omega_one()),
                    true,
                    None,
                ),
                Ordinal::InitialPlus { .. } => {
                    if let Some(cap) = tower_cap(alpha) {
                        ctx.upper(
                            t,
                            "cantor_tower_cap",
                            vec![format!("a = {alpha}")],
                            DimValue::Ordinal(cap),
                            false,
                            None,
                        );
                    }
                }
            }
        }
        DenseSubset(alpha) => {
            if matches!(alpha, Ordinal::Small(_)) {
                ctx.upper(
                    t,
                    "dense_subset_tdhd",
                    vec![format!("variant of S_a below w_1 for a = {alpha}")],
                    DimValue::Ordinal(omega_one()),
                    true,
                    None,
                );
            }
            // at uncountable levels the cardinality cap supplies the upper bound
        }
        Product(..) => {
            if children.iter().all(NodeEval::nonempty) {
                let lo = max_lower(children.iter().map(|c| &c.tdhd.lower));
                let inputs = children.iter().map(|c| c.tdhd.interval()).collect();
                ctx.lower(t, "product_embeds", inputs, lo, None);
            }
        }
        ClosedUnion(_) => {
            let inputs: Vec<String> = children.iter().map(|c| c.tdhd.interval()).collect();
            let lo = max_lower(children.iter().map(|c| &c.tdhd.lower));
            if attrs.compact.is_true() {
                let ups: Vec<(&DimValue, bool)> = children
                    .iter()
                    .map(|c| (&c.tdhd.upper, c.tdhd.strict))
                    .collect();
                let (up, strict) = max_upper(&ups);
                ctx.both(t, "compact_union_max_tdhd", inputs, lo, up, strict, None);
            } else {
                ctx.lower(t, "subspace_monotone", inputs, lo, None);
            }
        }
        LocallyFiniteClosedUnion { .. } => {
            let inputs: Vec<String> = children.iter().map(|c| c.tdhd.interval()).collect();
            let lo = max_lower(children.iter().map(|c| &c.tdhd.lower));
            if attrs.compact.is_true() {
                let ups: Vec<(&DimValue, bool)> = children
                    .iter()
                    .map(|c| (&c.tdhd.upper, c.tdhd.strict))
                    .collect();
                let (up, strict) = max_upper(&ups);
                ctx.both(t, "compact_lf_sum_tdhd", inputs, lo, up, strict, None);
            } else {
                ctx.lower(t, "subspace_monotone", inputs, lo, None);
            }
        }
        Augment(_) => {
            let core = &children[0];
            if core.nonempty() {
                ctx.both(
                    t,
                    "countable_augment_tdhd",
                    vec![core.tdhd.interval()],
                    core.tdhd.lower.clone(),
                    core.tdhd.upper.clone(),
                    core.tdhd.strict,
                    None,
                );
            } else {
                let zero = DimValue::nat(0);
                let (up, strict) = if core.tdhd.upper > zero {
                    (core.tdhd.upper.clone(), core.tdhd.strict)
                } else {
                    (zero, false)
                };
                ctx.upper(t, "augment_widen", vec![core.tdhd.interval()], up, strict, None);
            }
        }
        Excision { .. } => {
            let (c, f) = (&children[0], &children[1]);
            let inputs = vec![c.tdhd.interval(), f.tdhd.interval()];
            let lo = max_lower([&c.tdhd.lower, &f.tdhd.lower].into_iter());
            ctx.lower(t, "subspace_monotone", inputs.clone(), lo, None);
            if attrs.compact.is_true() {
                if let Some(up) = excision_form(&c.tdhd.upper, &f.tdhd.upper) {
                    ctx.upper(t, "excision_tdhd", inputs, up, false, None);
                }
            }
        }
        AlexandrovSum { repeated, .. } => {
            let inputs: Vec<String> = children.iter().map(|c| c.tdhd.interval()).collect();
            let note = repeated.then(|| "prototypes repeat countably".to_string());
            let lo = max_lower(
                children
                    .iter()
                    .map(|c| &c.tdhd.lower)
                    .chain(std::iter::once(&DimValue::nat(0))),
            );
            ctx.lower(t, "subspace_monotone", inputs.clone(), lo, None);
            if attrs.compact.is_true() {
                let ups: Vec<(&DimValue, bool)> = children
                    .iter()
                    .map(|c| (&c.tdhd.upper, c.tdhd.strict))
                    .collect();
                let (up, strict) = max_upper(&ups);
                let zero = DimValue::nat(0);
                let (up, strict) = if up > zero { (up, strict) } else { (zero, false) };
                ctx.upper(t, "alexandrov_tdhd", inputs, up, strict, note);
            }
        }
        SubspaceOf(_) => {
            let p = &children[0];
            ctx.upper(
                t,
                "subspace_monotone",
                vec![p.tdhd.interval()],
                p.tdhd.upper.clone(),
                p.tdhd.strict,
                None,
            );
        }
        WithAttrs { .. } => unreachable!(),
    }
}

/// Structural knowledge about the classical Hausdorff dimension: declared
/// values, standard cells, and closure under the max-stable constructions.
fn hd_structural(
    expr: &SpaceExpr,
    children: &[NodeEval],
    declared: &Declared,
) -> Result<Option<HdClass>, SpaceError> {
    use SpaceExpr::*;
    let structural = match expr {
        Empty | Point => Some(HdClass::FiniteExactly(Rat::from_integer(0.into()))),
        Cube(n) => Some(HdClass::FiniteExactly(Rat::from_integer((*n).into()))),
        // positive measure forces HD >= 1, and the set lives in the line
        FatCantor(_) => Some(HdClass::FiniteExactly(Rat::from_integer(1.into()))),
        Smirnov(alpha) | SmirnovCantor(alpha) => alpha
            .as_nat()
            .map(|n| HdClass::FiniteExactly(Rat::from_integer(n.into()))),
        DenseSubset(alpha) => alpha
            .as_nat()
            .map(|n| HdClass::FiniteAtMost(Rat::from_integer(n.into()))),
        ClosedUnion(_)
        | LocallyFiniteClosedUnion { .. }
        | AlexandrovSum { .. }
        | Excision { .. } => {
            let parts: Vec<Option<HdClass>> =
                children.iter().map(|c| c.hd_fin.clone()).collect();
            hd_join(&parts)
        }
        Augment(_) => children[0].hd_fin.clone(),
        SubspaceOf(_) => match &children[0].hd_fin {
            Some(HdClass::FiniteExactly(v)) | Some(HdClass::FiniteAtMost(v)) => {
                Some(HdClass::FiniteAtMost(v.clone()))
            }
            _ => None,
        },
        Product(..) => None,
        WithAttrs { .. } => unreachable!(),
    };
    match (&declared.hd, structural) {
        (None, s) => Ok(s),
        (Some(h), None) => Ok(Some(HdClass::FiniteExactly(h.clone()))),
        (Some(h), Some(HdClass::FiniteExactly(v))) => {
            if *h != v {
                return Err(SpaceError::DeclarationConflict(format!(
                    "declared hd = {h} but the construction pins HD = {v}"
                )));
            }
            Ok(Some(HdClass::FiniteExactly(v)))
        }
        (Some(h), Some(HdClass::FiniteAtMost(v))) => {
            if *h > v {
                return Err(SpaceError::DeclarationConflict(format!(
                    "declared hd = {h} but the construction forces HD <= {v}"
                )));
            }
            Ok(Some(HdClass::FiniteExactly(h.clone())))
        }
        (Some(_), other) => Ok(other),
    }
}

#[cfg(test)]
mod tests;
