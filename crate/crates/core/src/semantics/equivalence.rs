use std::fmt;

use rayon::prelude::*;

use super::{
    enumerate::{subsets_by_size, subsets_of},
    stable::{candidate_atoms, check_atom_count},
    GroundAtom, HtModel, HtPair, PropInterp, Result, Scope, SemanticsError,
};
use crate::{
    analysis::build_signature,
    folog::{Semantics, Theory},
    syntax::Program,
    translate::Translation,
};

/// Which translation is applied to each side of a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    CliCli,
    DlvDlv,
    /// clingo semantics for the left program, dlv for the right one
    CliDlv,
}

impl Mode {
    pub fn semantics(self) -> (Semantics, Semantics) {
        match self {
            Mode::CliCli => (Semantics::Cli, Semantics::Cli),
            Mode::DlvDlv => (Semantics::Dlv, Semantics::Dlv),
            Mode::CliDlv => (Semantics::Cli, Semantics::Dlv),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.semantics();
        write!(f, "{a}-{b}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Upper bound on the number of pairs `⟨H, I⟩` to enumerate.
    pub max_pairs: u128,
    pub strict_item3: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            jobs: 1,
            max_pairs: 5_000_000,
            strict_item3: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No pair over the scope separates the programs. This is not a proof of
    /// strong equivalence.
    EquivalentWithinScope { pairs_checked: u128 },
    /// A pair satisfying the translation of exactly one program; `left`
    /// tells which one.
    Counterexample { pair: HtPair, left: bool },
}

/// Searches for an agg-ht-interpretation that satisfies exactly one of the
/// translated programs. Pairs are visited by there-world (by size, then
/// lexicographically) and, within a there-world, by here-world in the same
/// order, so the reported counterexample is the first in that order
/// regardless of `jobs`.
pub fn check_strong_equivalence(
    left: &Program,
    right: &Program,
    scope: &Scope,
    mode: Mode,
    options: &CheckOptions,
) -> Result<Verdict> {
    let sig = build_signature([left, right]);
    let (a, b) = mode.semantics();
    let translate = |x: Semantics, p: &Program| -> Result<Theory> {
        Ok(Translation::new(x)
            .strict_item3(options.strict_item3)
            .tau_program(p, &sig)?)
    };
    let left_theory = translate(a, left)?;
    let right_theory = translate(b, right)?;
    let atoms: Vec<GroundAtom> = candidate_atoms([&left_theory, &right_theory], &sig, scope)
        .into_iter()
        .collect();
    check_atom_count(atoms.len())?;
    let pairs = 3u128.pow(atoms.len() as u32);
    if pairs > options.max_pairs {
        return Err(SemanticsError::ScopeExplosion {
            what: format!("the set of pairs over {} atoms", atoms.len()),
            size: pairs,
            limit: options.max_pairs,
        });
    }

    let search = |there_atoms: &Vec<GroundAtom>| -> Result<Option<Verdict>> {
        let there = PropInterp::new(there_atoms.iter().cloned());
        for here in subsets_of(there_atoms, false) {
            let pair = HtPair::new(PropInterp::new(here), there.clone())?;
            let model = HtModel::new(&pair, &sig, scope);
            let l = model.satisfies_all(left_theory.sentences())?;
            let r = model.satisfies_all(right_theory.sentences())?;
            if l != r {
                return Ok(Some(Verdict::Counterexample { pair, left: l }));
            }
        }
        Ok(None)
    };

    let found = if options.jobs <= 1 {
        subsets_by_size(&atoms)
            .map(|there| search(&there))
            .find_map(|r| r.transpose())
    } else {
        let theres: Vec<Vec<GroundAtom>> = subsets_by_size(&atoms).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            theres
                .par_iter()
                .find_map_first(|there| search(there).transpose())
        })
    };
    match found {
        Some(verdict) => verdict,
        None => Ok(Verdict::EquivalentWithinScope {
            pairs_checked: pairs,
        }),
    }
}
