//! Exhaustive search for complete sets.
//!
//! Every nonzero point lies in exactly one generator of a complete set
//! ((d+1)(d-1) = d^2 - 1), so the search is an exact cover of the nonzero
//! points by extraordinary subgroups. Branching on the smallest uncovered
//! point visits each set once, no symmetry reduction needed.

use std::collections::{BTreeMap, HashMap};
use std::time::Duration;

use super::complete::{type_four_d8, type_one, type_three_d8, type_two_d4, type_two_d8, CompleteSet, SetType};
use crate::error::Result;
use crate::phasespace::{PhaseSpace, Point, Subgroup};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads for the first branching level; 1 runs inline.
    pub workers: usize,
    /// Wall-clock budget. `None` searches to completion.
    pub time_budget: Option<Duration>,
    /// Stop after this many sets.
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            time_budget: None,
            limit: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Canonically ordered: generators sorted inside each set, sets sorted.
    pub sets: Vec<CompleteSet>,
    /// False when the budget or limit cut the search short.
    pub complete: bool,
}

impl SearchOutcome {
    pub fn census(&self) -> BTreeMap<SetType, usize> {
        let mut census = BTreeMap::new();
        for s in &self.sets {
            *census.entry(s.set_type()).or_insert(0) += 1;
        }
        census
    }
}

type Bits = Vec<u64>;

struct Problem {
    words: usize,
    // candidate subgroups as bitsets of nonzero point keys
    masks: Vec<Bits>,
    // candidates containing each point key
    by_point: Vec<Vec<usize>>,
    size: usize,
    target: usize,
}

impl Problem {
    fn disjoint(&self, a: &Bits, b: &Bits) -> bool {
        a.iter().zip(b).all(|(x, y)| x & y == 0)
    }

    fn first_uncovered(&self, covered: &Bits) -> Option<usize> {
        (1..self.size).find(|&k| covered[k / 64] >> (k % 64) & 1 == 0)
    }
}

struct Worker<'a> {
    problem: &'a Problem,
    deadline: Option<std::time::Instant>,
    limit: Option<usize>,
    found: Vec<Vec<usize>>,
    aborted: bool,
    steps: u64,
}

impl Worker<'_> {
    fn out_of_time(&mut self) -> bool {
        self.steps += 1;
        if self.steps.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if std::time::Instant::now() >= deadline {
                    self.aborted = true;
                }
            }
        }
        if self.limit.is_some_and(|l| self.found.len() >= l) {
            self.aborted = true;
        }
        self.aborted
    }

    fn descend(&mut self, chosen: &mut Vec<usize>, covered: &mut Bits) {
        if self.out_of_time() {
            return;
        }
        if chosen.len() == self.problem.target {
            self.found.push(chosen.clone());
            return;
        }
        let Some(point) = self.problem.first_uncovered(covered) else {
            return;
        };
        for &c in &self.problem.by_point[point] {
            if !self.problem.disjoint(&self.problem.masks[c], covered) {
                continue;
            }
            self.apply(c, chosen, covered);
            self.descend(chosen, covered);
            self.undo(c, chosen, covered);
            if self.aborted {
                return;
            }
        }
    }

    fn apply(&self, c: usize, chosen: &mut Vec<usize>, covered: &mut Bits) {
        for (w, m) in covered.iter_mut().zip(&self.problem.masks[c]) {
            *w |= m;
        }
        chosen.push(c);
    }

    fn undo(&self, c: usize, chosen: &mut Vec<usize>, covered: &mut Bits) {
        for (w, m) in covered.iter_mut().zip(&self.problem.masks[c]) {
            *w &= !m;
        }
        chosen.pop();
    }
}

/// Maps each template-constructible set (sorted generators) to the first
/// `(type, v1, v2)` producing it, scanning pairs in canonical order.
///
/// d = 4 uses Types I and II, d = 8 Types I to IV. Other orders only know
/// Type I, the set of all lines.
pub fn template_matches(ps: &PhaseSpace) -> HashMap<Vec<Subgroup>, (SetType, Point, Point)> {
    type Builder = fn(&PhaseSpace, Point, Point) -> Result<CompleteSet>;
    let builders: Vec<Builder> = match ps.d() {
        4 => vec![type_one, type_two_d4],
        8 => vec![type_one, type_two_d8, type_three_d8, type_four_d8],
        _ => vec![type_one],
    };
    let mut map = HashMap::new();
    if ps.d() > 8 {
        let v1 = Point::new(crate::gf2n::Elem::ONE, crate::gf2n::Elem::ZERO);
        let v2 = Point::new(crate::gf2n::Elem::ZERO, crate::gf2n::Elem::ONE);
        let set = type_one(ps, v1, v2).expect("standard basis");
        map.insert(set.canonical_key(), (SetType::I, v1, v2));
        return map;
    }
    for build in builders {
        for v1 in ps.points() {
            for v2 in ps.points() {
                if let Ok(set) = build(ps, v1, v2) {
                    map.entry(set.canonical_key()).or_insert((set.set_type(), v1, v2));
                }
            }
        }
    }
    map
}

/// All complete sets of mutually orthogonal extraordinary supersquares,
/// each annotated with the first template that reproduces it.
pub fn search_complete_sets(ps: &PhaseSpace, options: &SearchOptions) -> Result<SearchOutcome> {
    let candidates = ps.enumerate_extraordinary_subgroups();
    let size = ps.size();
    let words = size.div_ceil(64);
    let mut masks = Vec::with_capacity(candidates.len());
    let mut by_point = vec![Vec::new(); size];
    for (i, g) in candidates.iter().enumerate() {
        let mut bits = vec![0u64; words];
        for p in g.nonzero() {
            let k = ps.key(p);
            bits[k / 64] |= 1 << (k % 64);
            by_point[k].push(i);
        }
        masks.push(bits);
    }
    let problem = Problem {
        words,
        masks,
        by_point,
        size,
        target: ps.d() + 1,
    };
    let deadline = options.time_budget.map(|b| std::time::Instant::now() + b);

    // the first uncovered point is always key 1; split its branches
    let roots = problem.by_point[1].clone();
    let workers = options.workers.max(1).min(roots.len().max(1));
    let run = |share: Vec<usize>| {
        let mut worker = Worker {
            problem: &problem,
            deadline,
            limit: options.limit,
            found: Vec::new(),
            aborted: false,
            steps: 0,
        };
        let mut chosen = Vec::new();
        let mut covered = vec![0u64; problem.words];
        for c in share {
            worker.apply(c, &mut chosen, &mut covered);
            worker.descend(&mut chosen, &mut covered);
            worker.undo(c, &mut chosen, &mut covered);
            if worker.aborted {
                break;
            }
        }
        (worker.found, worker.aborted)
    };
    let results: Vec<(Vec<Vec<usize>>, bool)> = if workers == 1 {
        vec![run(roots)]
    } else {
        let shares: Vec<Vec<usize>> = (0..workers)
            .map(|w| roots.iter().copied().skip(w).step_by(workers).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = shares.into_iter().map(|s| scope.spawn(|| run(s))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut complete = true;
    let mut keys: Vec<Vec<Subgroup>> = Vec::new();
    for (found, aborted) in results {
        complete &= !aborted;
        for set in found {
            let mut gens: Vec<Subgroup> = set.into_iter().map(|i| candidates[i].clone()).collect();
            gens.sort();
            keys.push(gens);
        }
    }
    keys.sort();
    keys.dedup();
    if let Some(limit) = options.limit {
        if keys.len() > limit {
            keys.truncate(limit);
        }
    }

    let templates = template_matches(ps);
    let sets = keys
        .iter()
        .map(|gens| {
            let (set_type, basis) = match templates.get(gens) {
                Some(&(t, v1, v2)) => (t, Some((v1, v2))),
                None => (SetType::Unclassified, None),
            };
            CompleteSet::from_generators(ps, gens, set_type, basis)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome { sets, complete })
}
