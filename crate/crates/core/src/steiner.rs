//! Node-weighted Steiner tree in bipartite graphs where terminals and
//! nonterminals are both independent sets.
//!
//! Terminal subsets are bit masks over terminal positions. The weighted DP
//! keeps `t(T0, j)`: the least weight of a nonterminal set `X` with `|X| = j`
//! whose neighborhood is exactly `T0` and for which `T0 ∪ X` is connected.
//! Cells are filled by extending `T0` with a nonterminal adjacent to it.
//!
//! Counting cannot use the same forward relaxation (every set would be
//! counted once per valid insertion order), so [`SteinerCountTable`] splits
//! off the component containing the lowest terminal instead.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Count;

pub type TerminalMask = u64;

/// Largest terminal set a mask can encode.
pub const MAX_TERMINALS: usize = 62;

/// Weight of a cell no nonterminal set reaches.
pub const UNREACHABLE: f64 = f64::INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub struct Nonterminal {
    pub id: usize,
    /// Adjacent terminal ids.
    pub neighbors: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinerInstance {
    terminals: Vec<usize>,
    nonterminals: Vec<usize>,
    neighborhoods: Vec<TerminalMask>,
    weights: Vec<f64>,
}

impl SteinerInstance {
    /// Builds an instance from terminal ids and nonterminals whose neighbor
    /// lists name terminal ids. Nonterminals without neighbors are dropped.
    pub fn new(terminals: Vec<usize>, nonterminals: Vec<Nonterminal>) -> Result<Self> {
        let mut masks = Vec::with_capacity(nonterminals.len());
        for u in nonterminals {
            let mut mask = 0;
            for t in &u.neighbors {
                let pos = terminals.iter().position(|x| x == t).ok_or_else(|| {
                    Error::invalid(format!("nonterminal {} adjacent to non-terminal {t}", u.id))
                })?;
                mask |= 1 << pos;
            }
            masks.push((u.id, mask, u.weight));
        }
        Self::from_masks(terminals, masks)
    }

    /// Builds an instance from `(id, neighborhood mask, weight)` triples, the
    /// mask indexing positions in `terminals`.
    pub fn from_masks(
        terminals: Vec<usize>,
        nonterminals: impl IntoIterator<Item = (usize, TerminalMask, f64)>,
    ) -> Result<Self> {
        if terminals.is_empty() {
            return Err(Error::invalid(
                "Steiner instance needs at least one terminal",
            ));
        }
        if terminals.len() > MAX_TERMINALS {
            return Err(Error::resource(format!(
                "{} terminals exceed the limit of {MAX_TERMINALS}",
                terminals.len()
            )));
        }
        let mut sorted = terminals.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate terminal id"));
        }
        let full = (1u64 << terminals.len()) - 1;
        let mut ids = Vec::new();
        let mut neighborhoods = Vec::new();
        let mut weights = Vec::new();
        for (id, mask, weight) in nonterminals {
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(Error::invalid(format!(
                    "nonterminal {id} has invalid weight {weight}"
                )));
            }
            if mask & !full != 0 {
                return Err(Error::invalid(format!(
                    "nonterminal {id} neighborhood outside the terminal set"
                )));
            }
            if sorted.binary_search(&id).is_ok() || ids.contains(&id) {
                return Err(Error::invalid(format!("vertex id {id} used twice")));
            }
            if mask == 0 {
                continue;
            }
            ids.push(id);
            neighborhoods.push(mask);
            weights.push(weight);
        }
        Ok(SteinerInstance {
            terminals,
            nonterminals: ids,
            neighborhoods,
            weights,
        })
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[usize] {
        &self.nonterminals
    }

    pub fn neighborhood(&self, i: usize) -> TerminalMask {
        self.neighborhoods[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn full_mask(&self) -> TerminalMask {
        (1u64 << self.terminals.len()) - 1
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    fn subset_count(&self) -> usize {
        1usize << self.terminals.len()
    }

    fn ids_of(&self, positions: &[usize]) -> Vec<usize> {
        let mut ids: Vec<usize> = positions.iter().map(|&i| self.nonterminals[i]).collect();
        ids.sort_unstable();
        ids
    }
}

/// Chosen nonterminals (by id, sorted) and their total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SteinerSolution {
    pub nonterminals: Vec<usize>,
    pub weight: f64,
}

fn check_cells(subsets: usize, columns: usize, cell_limit: usize) -> Result<usize> {
    match subsets.checked_mul(columns) {
        Some(cells) if cells <= cell_limit => Ok(cells),
        _ => Err(Error::resource(format!(
            "Steiner table of {subsets} x {columns} cells exceeds the limit of {cell_limit}"
        ))),
    }
}

#[derive(Debug, Clone, Copy)]
struct Pred {
    prev: TerminalMask,
    via: u32,
}

const NO_PRED: Pred = Pred {
    prev: 0,
    via: u32::MAX,
};

/// Min-weight DP table over (terminal subset, exact cardinality).
#[derive(Debug)]
pub struct SteinerTable<'a> {
    inst: &'a SteinerInstance,
    budget: usize,
    values: Vec<f64>,
    preds: Vec<Pred>,
}

impl<'a> SteinerTable<'a> {
    pub fn build(inst: &'a SteinerInstance, budget: usize, cell_limit: usize) -> Result<Self> {
        let columns = budget
            .checked_add(1)
            .ok_or_else(|| Error::resource("budget too large"))?;
        let cells = check_cells(inst.subset_count(), columns, cell_limit)?;
        let mut values = vec![UNREACHABLE; cells];
        let mut preds = vec![NO_PRED; cells];
        for pos in 0..inst.terminals.len() {
            values[(1usize << pos) * columns] = 0.0;
        }

        // A relaxation only fires when the nonterminal brings in a terminal
        // outside T0, so targets are strict supersets and numeric order is a
        // valid processing order. It also means no nonterminal is used twice.
        for mask in 1..inst.subset_count() as TerminalMask {
            let row = mask as usize * columns;
            for j in 0..budget {
                let base = values[row + j];
                if !base.is_finite() {
                    continue;
                }
                for (i, &nb) in inst.neighborhoods.iter().enumerate() {
                    if nb & mask == 0 || nb & !mask == 0 {
                        continue;
                    }
                    let target = (mask | nb) as usize * columns + j + 1;
                    let cand = base + inst.weights[i];
                    if cand < values[target] {
                        values[target] = cand;
                        preds[target] = Pred {
                            prev: mask,
                            via: i as u32,
                        };
                    }
                }
            }
        }
        Ok(SteinerTable {
            inst,
            budget,
            values,
            preds,
        })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn cells(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, mask: TerminalMask, j: usize) -> Option<f64> {
        if j > self.budget || mask > self.inst.full_mask() {
            return None;
        }
        let v = self.values[mask as usize * (self.budget + 1) + j];
        v.is_finite().then_some(v)
    }

    /// Nonterminal positions realizing cell `(mask, j)`, in insertion order.
    pub fn witness_positions(&self, mask: TerminalMask, j: usize) -> Option<Vec<usize>> {
        self.value(mask, j)?;
        let columns = self.budget + 1;
        let mut out = Vec::with_capacity(j);
        let (mut mask, mut j) = (mask, j);
        while j > 0 {
            let p = self.preds[mask as usize * columns + j];
            debug_assert_ne!(p.via, u32::MAX);
            out.push(p.via as usize);
            mask = p.prev;
            j -= 1;
        }
        out.reverse();
        Some(out)
    }

    /// Cheapest cell for the full terminal set; ties go to fewer nonterminals.
    pub fn best(&self) -> Option<SteinerSolution> {
        let full = self.inst.full_mask();
        let mut best: Option<(f64, usize)> = None;
        for j in 0..=self.budget {
            if let Some(v) = self.value(full, j) {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let (weight, j) = best?;
        let positions = self.witness_positions(full, j)?;
        Some(SteinerSolution {
            nonterminals: self.inst.ids_of(&positions),
            weight,
        })
    }
}

/// Minimum-weight nonterminal set of size at most `k` connecting all
/// terminals, or `None` if there is none.
pub fn solve_min_weight(
    inst: &SteinerInstance,
    k: usize,
    cell_limit: usize,
) -> Result<Option<SteinerSolution>> {
    Ok(SteinerTable::build(inst, k, cell_limit)?.best())
}

/// Uniform-weight variant: with unit weights weight equals cardinality, so
/// one value per terminal subset suffices.
pub fn solve_min_cardinality(
    inst: &SteinerInstance,
    k: usize,
    cell_limit: usize,
) -> Result<Option<SteinerSolution>> {
    let subsets = inst.subset_count();
    check_cells(subsets, 1, cell_limit)?;
    const UNSET: u32 = u32::MAX;
    let mut size = vec![UNSET; subsets];
    let mut preds = vec![NO_PRED; subsets];
    for pos in 0..inst.terminals.len() {
        size[1 << pos] = 0;
    }
    for mask in 1..subsets as TerminalMask {
        let s = size[mask as usize];
        if s == UNSET || s as usize >= k {
            continue;
        }
        for (i, &nb) in inst.neighborhoods.iter().enumerate() {
            if nb & mask == 0 || nb & !mask == 0 {
                continue;
            }
            let target = (mask | nb) as usize;
            if s + 1 < size[target] {
                size[target] = s + 1;
                preds[target] = Pred {
                    prev: mask,
                    via: i as u32,
                };
            }
        }
    }
    let full = inst.full_mask();
    if size[full as usize] == UNSET {
        return Ok(None);
    }
    let mut positions = Vec::new();
    let mut mask = full;
    while size[mask as usize] > 0 {
        let p = preds[mask as usize];
        positions.push(p.via as usize);
        mask = p.prev;
    }
    let weight = positions.iter().map(|&i| inst.weights[i]).sum();
    Ok(Some(SteinerSolution {
        nonterminals: inst.ids_of(&positions),
        weight,
    }))
}

/// Counting tables over (terminal subset, exact cardinality).
///
/// `a(T0, j)` counts nonterminal sets of size `j` with neighborhood inside
/// `T0`; `c(T0, j)` counts those that also make `T0 ∪ X` connected. Every
/// set counted by `a` splits uniquely into the component of the lowest
/// terminal `t*` (terminal set `T1 ∋ t*`, nonterminals counted by `c(T1, i)`)
/// and an arbitrary remainder avoiding `T1`, which gives
///
/// ```text
/// a(T0, j) = Σ_{t* ∈ T1 ⊆ T0} Σ_i c(T1, i) · a(T0 \ T1, j - i)
/// ```
///
/// and `c(T0, j)` is `a(T0, j)` minus the terms with `T1 ≠ T0`.
#[derive(Debug)]
pub struct SteinerCountTable {
    columns: usize,
    connected: Vec<Count>,
    anywhere: Vec<Count>,
    full: TerminalMask,
}

impl SteinerCountTable {
    pub fn build(inst: &SteinerInstance, budget: usize, cell_limit: usize) -> Result<Self> {
        let budget = budget.min(inst.nonterminals.len());
        let columns = budget + 1;
        let subsets = inst.subset_count();
        let cells = check_cells(subsets, columns, cell_limit)?;

        // nonterminals whose neighborhood fits inside each subset
        let mut inside = vec![0usize; subsets];
        for &nb in &inst.neighborhoods {
            inside[nb as usize] += 1;
        }
        for bit in 0..inst.terminals.len() {
            for mask in 0..subsets {
                if mask & (1 << bit) != 0 {
                    inside[mask] += inside[mask ^ (1 << bit)];
                }
            }
        }

        let binom = binomials(inst.nonterminals.len(), budget);
        let mut anywhere = Vec::with_capacity(cells);
        for &m in &inside {
            anywhere.extend(binom[m].iter().cloned());
        }

        let mut connected = vec![Count::zero(); cells];
        for mask in 1..subsets {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut split = vec![Count::zero(); columns];
            // T1 = low | s for every s ⊊ rest
            let mut s = rest;
            while s != 0 {
                s = (s - 1) & rest;
                let part = low | s;
                let other = mask ^ part;
                for i in 0..columns {
                    let ci = &connected[part * columns + i];
                    if ci.is_zero() {
                        continue;
                    }
                    for j in i..columns {
                        let aj = &anywhere[other * columns + j - i];
                        if !aj.is_zero() {
                            split[j] += ci * aj;
                        }
                    }
                }
            }
            for (j, sub) in split.into_iter().enumerate() {
                let total = &anywhere[mask * columns + j];
                debug_assert!(*total >= sub);
                connected[mask * columns + j] = total - sub;
            }
        }

        Ok(SteinerCountTable {
            columns,
            connected,
            anywhere,
            full: inst.full_mask(),
        })
    }

    fn cell(&self, table: &[Count], mask: TerminalMask, j: usize) -> Count {
        if mask > self.full || j >= self.columns {
            return Count::zero();
        }
        table[mask as usize * self.columns + j].clone()
    }

    pub fn connected(&self, mask: TerminalMask, j: usize) -> Count {
        self.cell(&self.connected, mask, j)
    }

    pub fn unconstrained(&self, mask: TerminalMask, j: usize) -> Count {
        self.cell(&self.anywhere, mask, j)
    }

    /// Number of connecting sets of size at most `k` for the full terminal set.
    pub fn count_at_most(&self, k: usize) -> Count {
        (0..=k.min(self.columns - 1))
            .map(|j| self.connected(self.full, j))
            .sum()
    }
}

/// `C(m, j)` for `m <= max_n`, `j <= max_k`.
fn binomials(max_n: usize, max_k: usize) -> Vec<Vec<Count>> {
    let mut rows: Vec<Vec<Count>> = Vec::with_capacity(max_n + 1);
    for m in 0..=max_n {
        let mut row = vec![Count::zero(); max_k + 1];
        row[0] = Count::from(1u32);
        for j in 1..=max_k.min(m) {
            row[j] = &rows[m - 1][j - 1] + &rows[m - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Number of nonterminal sets of size at most `k` connecting all terminals.
pub fn count_at_most(inst: &SteinerInstance, k: usize, cell_limit: usize) -> Result<Count> {
    Ok(SteinerCountTable::build(inst, k, cell_limit)?.count_at_most(k))
}
