//! Which AMM families suit which LST trading pairs.

/// Reward distribution model of a liquid staking token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LstKind {
    /// Pegged to one unit of the underlying; rewards arrive as extra tokens.
    Rebase,
    /// Price drifts upward with accrued rewards.
    Reward,
}

/// The other asset in the trading pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterAsset {
    /// The LST's underlying token (e.g. ETH).
    Underlying,
    /// Another LST.
    Lst(LstKind),
}

/// Parameter-free family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    ConstantProduct,
    ConcentratedLiquidity,
    Stableswap,
    Cryptoswap,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::ConstantProduct => "constant-product",
            FamilyKind::ConcentratedLiquidity => "concentrated-liquidity",
            FamilyKind::Stableswap => "stableswap",
            FamilyKind::Cryptoswap => "cryptoswap",
        }
    }
}

/// One recommended family, with the operational caveat that applies to
/// concentrated liquidity on drifting pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Suggestion {
    pub family: FamilyKind,
    pub requires_rebalancing: bool,
}

/// Capital-efficient AMM families for an LST trading pair.
///
/// Pegged pairs belong on Stableswap; drifting pairs on Cryptoswap or a
/// concentrated-liquidity pool, where a reward-LST/underlying pair needs
/// periodic range rebalancing. Mixed rebase/reward pairs are not covered by
/// the matrix and return an empty set.
pub fn suitability(lst: LstKind, counter: CounterAsset) -> Vec<Suggestion> {
    match (lst, counter) {
        (LstKind::Rebase, CounterAsset::Underlying)
        | (LstKind::Rebase, CounterAsset::Lst(LstKind::Rebase)) => vec![Suggestion {
            family: FamilyKind::Stableswap,
            requires_rebalancing: false,
        }],
        (LstKind::Reward, CounterAsset::Underlying) => vec![
            Suggestion {
                family: FamilyKind::Cryptoswap,
                requires_rebalancing: false,
            },
            Suggestion {
                family: FamilyKind::ConcentratedLiquidity,
                requires_rebalancing: true,
            },
        ],
        (LstKind::Reward, CounterAsset::Lst(LstKind::Reward)) => vec![
            Suggestion {
                family: FamilyKind::Cryptoswap,
                requires_rebalancing: false,
            },
            Suggestion {
                family: FamilyKind::ConcentratedLiquidity,
                requires_rebalancing: false,
            },
        ],
        _ => Vec::new(),
    }
}
