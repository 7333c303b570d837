//! The rule catalog: every bound refinement the engine performs is one of
//! these, and every trace entry points back here by name.
//!
//! Preference tiers follow the engine's application order within a node:
//! exact atom values, then equalities, then max/monotonicity rules, then
//! ordinal-sum rules, then the two caps. Disabling rules only ever widens
//! the resulting intervals.

/// Preference tier of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Pinned value of an atom.
    Exact,
    /// Two-sided equality between a node and its parts.
    Equality,
    /// Maximum/monotonicity reasoning.
    Max,
    /// Ordinal-sum upper bounds.
    Sum,
    /// Cardinality and Hausdorff-floor caps.
    Cap,
    /// Cross-links between the two dimension functions.
    Link,
}

/// A catalog entry: rule name plus the statement it rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub name: &'static str,
    pub kind: RuleKind,
    pub anchor: &'static str,
}

const CATALOG: &[Rule] = &[
    // ---- exact atom values, D side ----
    Rule {
        name: "empty_dim",
        kind: RuleKind::Exact,
        anchor: "the empty space has D-dimension -1 by definition",
    },
    Rule {
        name: "point_dim",
        kind: RuleKind::Exact,
        anchor: "a one-point space is zero-dimensional",
    },
    Rule {
        name: "cube_dim",
        kind: RuleKind::Exact,
        anchor: "the n-cell I^n has D = Ind = n",
    },
    Rule {
        name: "fat_cantor_dim",
        kind: RuleKind::Exact,
        anchor: "a Cantor set is compact and totally disconnected, so D = Ind = 0",
    },
    Rule {
        name: "smirnov_exact",
        kind: RuleKind::Exact,
        anchor: "D(S_a) = a at every level of the Smirnov tower",
    },
    Rule {
        name: "smirnov_cantor_zero",
        kind: RuleKind::Exact,
        anchor: "the Cantor companion is zero-dimensional: D(C_a) = 0",
    },
    // ---- exact atom values, variant side ----
    Rule {
        name: "empty_tdhd",
        kind: RuleKind::Exact,
        anchor: "only the empty space carries the value -1",
    },
    Rule {
        name: "point_tdhd",
        kind: RuleKind::Exact,
        anchor: "every Lipschitz image of a subspace of a point is at most a point",
    },
    Rule {
        name: "fat_cantor_onto_interval",
        kind: RuleKind::Exact,
        anchor: "the normalized measure map sends a fat Cantor set onto the interval \
                 with Lipschitz constant 1/measure, so the variant is at least D(I) = 1",
    },
    Rule {
        name: "smirnov_tdhd_cap",
        kind: RuleKind::Exact,
        anchor: "the variant of S_a stays strictly below w_1 for countable a",
    },
    Rule {
        name: "smirnov_cantor_lower",
        kind: RuleKind::Exact,
        anchor: "blockwise Cantor surjections give D(S_a) <= variant of C_a",
    },
    Rule {
        name: "smirnov_cantor_cap",
        kind: RuleKind::Exact,
        anchor: "the variant of C_a stays strictly below w_1 for countable a",
    },
    // ---- equalities ----
    Rule {
        name: "countable_augment_d",
        kind: RuleKind::Equality,
        anchor: "adjoining a countable set to a nonempty closed core leaves D unchanged",
    },
    Rule {
        name: "countable_augment_tdhd",
        kind: RuleKind::Equality,
        anchor: "countable augmentation of a nonempty closed core leaves the variant unchanged",
    },
    Rule {
        name: "compact_union_max_tdhd",
        kind: RuleKind::Equality,
        anchor: "for a compact union of finitely many closed parts, the variant equals \
                 the maximum over the parts",
    },
    Rule {
        name: "compact_lf_sum_tdhd",
        kind: RuleKind::Equality,
        anchor: "for a compact space covered by a locally finite closed family, the \
                 variant equals the supremum over the parts",
    },
    // ---- max / monotonicity ----
    Rule {
        name: "closed_union_max_d",
        kind: RuleKind::Max,
        anchor: "a union of finitely many closed parts has D equal to the maximum over the parts",
    },
    Rule {
        name: "locally_finite_sum_d",
        kind: RuleKind::Max,
        anchor: "a locally finite union of closed parts with D <= b has D <= b; \
                 each part embeds, giving the lower bound",
    },
    Rule {
        name: "subspace_monotone",
        kind: RuleKind::Max,
        anchor: "both dimension functions are monotone with respect to subspaces",
    },
    Rule {
        name: "product_embeds",
        kind: RuleKind::Max,
        anchor: "each factor embeds in the product once the other factor is nonempty",
    },
    Rule {
        name: "dense_subset_bounds",
        kind: RuleKind::Max,
        anchor: "D_a is a nonempty subspace of S_a, so both functions are bounded by \
                 their values on S_a",
    },
    Rule {
        name: "dense_subset_tdhd",
        kind: RuleKind::Max,
        anchor: "a dense subset is still a subspace: its variant is bounded by the \
                 variant of the ambient Smirnov space",
    },
    Rule {
        name: "augment_widen",
        kind: RuleKind::Max,
        anchor: "an augmented space with a possibly empty core is at most max{core, 0}",
    },
    // ---- ordinal sums ----
    Rule {
        name: "excision_d",
        kind: RuleKind::Sum,
        anchor: "for closed F: D(X) <= lim(D(X\\F)) + max{fin(D(X\\F)), D(F)}",
    },
    Rule {
        name: "excision_tdhd",
        kind: RuleKind::Sum,
        anchor: "for compact X and closed F, images split along F and the same \
                 lim/fin bound applies to the variant",
    },
    Rule {
        name: "alexandrov_d",
        kind: RuleKind::Sum,
        anchor: "excise the compactification point, then sum the locally finite block \
                 bound: D is at most the supremum over the blocks (and at least 0)",
    },
    Rule {
        name: "alexandrov_tdhd",
        kind: RuleKind::Sum,
        anchor: "for a compact one-point compactification, images decompose along the \
                 blocks: the variant is at most the supremum over the blocks",
    },
    // ---- caps and links ----
    Rule {
        name: "cantor_tower_cap",
        kind: RuleKind::Cap,
        anchor: "the variant of C_a is at most w_t, with t least such that a < w_t",
    },
    Rule {
        name: "weight_cap",
        kind: RuleKind::Cap,
        anchor: "a topological base of cardinality at most aleph_a together with \
                 D(X) < Omega caps the variant at w_(a+1)",
    },
    Rule {
        name: "hd_floor",
        kind: RuleKind::Cap,
        anchor: "with finite Hausdorff dimension, D(X) <= variant(X) <= floor(HD(X))",
    },
    Rule {
        name: "tdhd_from_d",
        kind: RuleKind::Link,
        anchor: "the variant dominates D: the identity map is Lipschitz",
    },
];

/// The full rule catalog, one entry per rule name used in traces.
pub fn catalog() -> &'static [Rule] {
    CATALOG
}

pub(crate) fn find(name: &str) -> &'static Rule {
    CATALOG
        .iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("rule {name} missing from catalog"))
}
