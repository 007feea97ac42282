//! Computational checks of the rank results for one `(n, m)`.
//!
//! Each check records the expected and computed value. Callers decide how to
//! report them; a failing check is not an error.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::closure::{closure, ClosureOptions, ClosureResult};
use crate::combinations::binomial;
use crate::error::{Error, Result};
use crate::rank::{
    rank_exhaustive, rank_via_lemma1, relative_rank, single_extension_sweep, RankReport, RankValue,
    SearchOptions,
};
use crate::structures::{
    alpha_beta, explicit_generators, membership, order_formula, wreath_standard_generators,
    GeneratorSet, StructureKind,
};
use crate::transform::UniformPartition;

/// Exhaustive rank cross-checks run only when the sizes below the expected
/// rank hold at most this many candidate subsets.
const EXHAUSTIVE_CROSS_CHECK_MAX: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Ranks 4, 3, 3 of `T(X,P)`, `Σ(X,P)`, `Γ(X,P)`.
    Main,
    /// `S(X,P)` generated by `x` and `y`.
    Wreath,
    /// `⟨G ∪ {α}⟩ = Σ`, `⟨G ∪ {β}⟩ = Γ`, `⟨G ∪ {α, β}⟩ = T`.
    Lemma2,
    /// No single element extends `S(X,P)` to `T(X,P)`.
    Kernel,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Self::Wreath, Self::Lemma2, Self::Kernel, Self::Main];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Main => "main",
            Self::Wreath => "wreath",
            Self::Lemma2 => "lemma2",
            Self::Kernel => "kernel",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Self::Main),
            "wreath" => Ok(Self::Wreath),
            "lemma2" => Ok(Self::Lemma2),
            "kernel" => Ok(Self::Kernel),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown theorem `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            name: name.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub reports: Vec<RankReport>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the selected verifications, or all of them.
pub fn verify(
    n: usize,
    m: usize,
    theorem: Option<Theorem>,
    options: &SearchOptions,
) -> Result<Verification> {
    // fails with UnsupportedCase on a trivial partition
    explicit_generators(n, m, StructureKind::Txp)?;
    let mut out = Verification::default();
    let selected: Vec<Theorem> = theorem.map_or(Theorem::ALL.to_vec(), |t| vec![t]);
    for t in selected {
        match t {
            Theorem::Wreath => verify_wreath(n, m, options, &mut out)?,
            Theorem::Lemma2 => verify_lemma2(n, m, options, &mut out)?,
            Theorem::Kernel => verify_kernel(n, m, options, &mut out)?,
            Theorem::Main => verify_main(n, m, options, &mut out)?,
        }
    }
    Ok(out)
}

fn close(gens: &GeneratorSet, options: &SearchOptions) -> Result<ClosureResult> {
    let opts = ClosureOptions {
        limit: options.closure_limit,
        word_log: false,
        threads: options.threads,
    };
    closure(gens, &opts)?.complete()
}

fn big(order: usize) -> BigUint {
    BigUint::from(order)
}

fn verify_wreath(
    n: usize,
    m: usize,
    options: &SearchOptions,
    out: &mut Verification,
) -> Result<()> {
    let gens = explicit_generators(n, m, StructureKind::Sxp)?;
    let partition = UniformPartition::new(n, m)?;
    let members = gens
        .elements()
        .iter()
        .map(|f| membership(f, &partition, StructureKind::Sxp))
        .collect::<Result<Vec<_>>>()?;
    out.checks.push(Check::new(
        "wreath: x, y lie in S(X,P)",
        true,
        members.iter().all(|&b| b),
    ));
    let g = close(&gens, options)?;
    out.checks.push(Check::new(
        "wreath: |<x, y>| = (n!)^m m!",
        order_formula(n, m, StructureKind::Sxp),
        big(g.order()),
    ));
    Ok(())
}

fn verify_lemma2(
    n: usize,
    m: usize,
    options: &SearchOptions,
    out: &mut Verification,
) -> Result<()> {
    let group = wreath_standard_generators(n, m)?;
    let g = close(&group, options)?;
    out.checks.push(Check::new(
        "lemma2: |G| = |S(X,P)|",
        order_formula(n, m, StructureKind::Sxp),
        big(g.order()),
    ));
    let (alpha, beta) = alpha_beta(n, m)?;
    let cases = [
        (
            "eq1: |<G ∪ {alpha}>| = |Σ(X,P)|",
            StructureKind::Sigma,
            true,
            false,
        ),
        (
            "eq2: |<G ∪ {beta}>| = |Γ(X,P)|",
            StructureKind::Gamma,
            false,
            true,
        ),
        (
            "eq3: |<G ∪ {alpha, beta}>| = |T(X,P)|",
            StructureKind::Txp,
            true,
            true,
        ),
    ];
    let partition = UniformPartition::new(n, m)?;
    for (name, kind, with_alpha, with_beta) in cases {
        let mut gens = group.clone();
        if with_alpha {
            gens.push("alpha", alpha.flatten())?;
        }
        if with_beta {
            gens.push("beta", beta.flatten())?;
        }
        // every generator in the structure, so equal order means equal set
        let inside = gens
            .elements()
            .iter()
            .map(|f| membership(f, &partition, kind))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        let c = close(&gens, options)?;
        out.checks.push(Check::new(
            format!("{name} (generators inside {kind})"),
            true,
            inside,
        ));
        out.checks
            .push(Check::new(name, order_formula(n, m, kind), big(c.order())));
    }
    Ok(())
}

fn verify_kernel(
    n: usize,
    m: usize,
    options: &SearchOptions,
    out: &mut Verification,
) -> Result<()> {
    let txp = single_extension_sweep(n, m, StructureKind::Txp, options)?;
    out.checks.push(Check::new(
        format!(
            "kernel: no single γ of {} extends S(X,P) to T(X,P)",
            txp.candidates
        ),
        0,
        txp.successes,
    ));
    let sigma = single_extension_sweep(n, m, StructureKind::Sigma, options)?;
    out.checks.push(Check::new(
        "kernel: some single element extends S(X,P) to Σ(X,P)",
        true,
        sigma.successes > 0,
    ));
    Ok(())
}

fn verify_main(n: usize, m: usize, options: &SearchOptions, out: &mut Verification) -> Result<()> {
    let expectations = [
        (StructureKind::Txp, "rank T(X,P)", 4, 2),
        (StructureKind::Sigma, "rank Σ(X,P)", 3, 1),
        (StructureKind::Gamma, "rank Γ(X,P)", 3, 1),
    ];
    let mut group_checked = false;
    for (kind, name, expected, expected_relative) in expectations {
        let s = close(&explicit_generators(n, m, kind)?, options)?;
        let max_k = expected + 1;
        let report = rank_via_lemma1(&s, max_k, options)?.with_structure(kind, n, m);
        out.checks.push(Check::new(
            format!("main: {name} (unit decomposition)"),
            expected,
            report.value,
        ));
        out.checks.push(Check::new(
            format!("main: {name} witness generates"),
            true,
            report.witness_generates(s.order())?,
        ));
        out.reports.push(report);

        let units = s.units();
        let relative = relative_rank(&s, &units, max_k, options)?.with_structure(kind, n, m);
        out.checks.push(Check::new(
            format!("main: relative {name} modulo S(X,P)"),
            expected_relative,
            relative.value,
        ));
        if !group_checked {
            let g = close(&units, options)?;
            let group = rank_exhaustive(
                &g,
                3,
                &SearchOptions {
                    conjugacy_reduction: true,
                    ..options.clone()
                },
            )?;
            out.checks
                .push(Check::new("main: rank S(X,P)", 2, group.value));
            group_checked = true;
        }

        let below: u128 = (0..expected).map(|j| binomial(s.order(), j)).sum();
        if below <= EXHAUSTIVE_CROSS_CHECK_MAX {
            let exhaustive = rank_exhaustive(&s, max_k, options)?.with_structure(kind, n, m);
            out.checks.push(Check::new(
                format!("main: {name} (exhaustive)"),
                expected,
                exhaustive.value,
            ));
            if let RankValue::Exact(_) = exhaustive.value {
                out.checks.push(Check::new(
                    format!("main: {name} exhaustive certificate covers all smaller subsets"),
                    below,
                    exhaustive.certificate.rejected_count,
                ));
            }
            out.reports.push(exhaustive);
        }
    }
    Ok(())
}
