//! Exhaustive and sampled checks of the bijections and the walk module.
//!
//! Each suite returns a [`SuiteReport`] with the number of objects checked,
//! the wall time and up to [`MAX_COUNTEREXAMPLES`] counterexamples.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{
    concat_diagrams, enumerate_diagrams, enumerate_tl_diagrams, right_agreement,
    right_chain_tree, secondary_labels, tl_projection, BrauerDiagram,
};
use crate::hecke::{
    decoupling_report, defined_offsets, verify_relations, BasisSubset, MultiShape,
    WalkModuleAction,
};
use crate::par::Exec;
use crate::paths::{
    concat_paths, enumerate_dyck, enumerate_paths, enumerate_paths_dfs, lvector_to_path,
    path_count, LVector, OverhangPath,
};
use crate::qfunc::QPoint;
use crate::simple::{
    enumerate_tuples, grid_to_overhang, grid_to_tuple, kappa, kappa_inverse, overhang_to_grid,
    simple_bijection, tuple_to_grid, RadixTuple,
};
use crate::tile::{delta_trace, phi, phi_tl, phi_tl_inverse, psi};

pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} n={} checked={} time={:.3}s",
            self.suite,
            self.n,
            self.checked,
            self.elapsed.as_secs_f64()
        )?;
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        for fail in &self.failures {
            write!(f, "\n  counterexample: {fail}")?;
        }
        Ok(())
    }
}

struct Builder {
    suite: String,
    n: usize,
    start: Instant,
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Builder {
    fn new(suite: &str, n: usize) -> Self {
        Self {
            suite: suite.to_string(),
            n,
            start: Instant::now(),
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a batch of per-object results.
    fn absorb(&mut self, results: Vec<Option<String>>) {
        self.checked += results.len();
        for r in results.into_iter().flatten() {
            self.fail(r);
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_COUNTEREXAMPLES {
            self.failures.push(msg);
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            n: self.n,
            checked: self.checked,
            failures: self.failures,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

/// `(2n-1)!!`.
pub fn double_factorial(n: usize) -> usize {
    path_count(n) as usize
}

pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Both enumerations have `(2n-1)!!` elements, and the depth-first path
/// enumeration agrees with the l-vector one.
pub fn counts(n: usize) -> SuiteReport {
    let mut b = Builder::new("counts", n);
    let want = double_factorial(n);
    let paths = enumerate_paths(n);
    let diagrams = enumerate_diagrams(n);
    b.check(paths.len() == want, || format!("{} paths, expected {want}", paths.len()));
    b.check(diagrams.len() == want, || format!("{} diagrams, expected {want}", diagrams.len()));
    let dfs: HashSet<_> = enumerate_paths_dfs(n).into_iter().collect();
    let lv: HashSet<_> = paths.iter().cloned().collect();
    b.check(dfs == lv, || "depth-first enumeration differs from l-vector enumeration".into());
    b.note(format!("paths={} diagrams={}", paths.len(), diagrams.len()));
    b.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

pub fn random_diagram(n: usize, rng: &mut impl Rng) -> BrauerDiagram {
    let x = (1..=n as i64).map(|i| rng.random_range(1..2 * i)).collect();
    kappa_inverse(&RadixTuple::new(x).expect("entries drawn in range"))
}

pub fn random_path(n: usize, rng: &mut impl Rng) -> OverhangPath {
    lvector_to_path(&LVector::unrank(n, rng.random_range(0..path_count(n))))
}

/// `psi ∘ phi = id` on diagrams and `phi ∘ psi = id` on paths.
pub fn roundtrip(n: usize, coverage: Coverage, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("roundtrip", n);
    let (diagrams, paths) = match coverage {
        Coverage::Exhaustive => (enumerate_diagrams(n), enumerate_paths(n)),
        Coverage::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ds = (0..count).map(|_| random_diagram(n, &mut rng)).collect();
            let ps = (0..count).map(|_| random_path(n, &mut rng)).collect();
            b.note(format!("sampled {count} diagrams and {count} paths with seed {seed}"));
            (ds, ps)
        }
    };
    b.absorb(exec.map(&diagrams, |d| {
        let p = phi(d);
        let back = psi(&p);
        (back != *d).then(|| format!("psi(phi({d})) = {back} via {p}"))
    }));
    b.absorb(exec.map(&paths, |p| {
        let d = psi(p);
        let back = phi(&d);
        (back != *p).then(|| format!("phi(psi({p})) = {back} via {d}"))
    }));
    if coverage == Coverage::Exhaustive {
        let images: HashSet<OverhangPath> = exec.map(&diagrams, phi).into_iter().collect();
        b.check(images.len() == diagrams.len(), || {
            format!("phi has {} distinct images on {} diagrams", images.len(), diagrams.len())
        });
    }
    b.finish()
}

/// The Dyck and TL sectors correspond under `psi`, `phi` and `Π`.
pub fn tl_restriction(n: usize, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("tl-restriction", n);
    let dyck = enumerate_dyck(n);
    b.check(dyck.len() == catalan(n), || format!("{} Dyck paths", dyck.len()));
    b.absorb(exec.map(&dyck, |t| {
        let d = psi(t);
        if !d.is_tl() {
            return Some(format!("psi({t}) = {d} has crossings"));
        }
        if phi_tl_inverse(t).ok().as_ref() != Some(&d) {
            return Some(format!("psi({t}) = {d} differs from bracket matching"));
        }
        (phi_tl(&d).ok().as_ref() != Some(t)).then(|| format!("phi_tl(psi({t})) != {t}"))
    }));
    let tl = enumerate_tl_diagrams(n);
    b.check(tl.len() == catalan(n), || format!("{} TL diagrams", tl.len()));
    b.absorb(exec.map(&tl, |d| {
        let proj = tl_projection(d);
        if proj != *d {
            return Some(format!("Π({d}) = {proj}"));
        }
        let p = phi(d);
        (!p.is_dyck()).then(|| format!("phi({d}) = {p} is not Dyck"))
    }));
    b.note(format!("dyck={} tl={}", dyck.len(), tl.len()));
    b.finish()
}

/// `psi(a * b) = psi(a) psi(b)` for degrees summing to at most `max_total`,
/// and the same for `phi_tl` on TL pairs.
pub fn homomorphism(max_total: usize, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("homomorphism", max_total);
    let by_degree: Vec<Vec<OverhangPath>> = (0..=max_total).map(enumerate_paths).collect();
    let mut pairs = Vec::new();
    for i in 0..=max_total {
        for j in 0..=max_total - i {
            for a in &by_degree[i] {
                for c in &by_degree[j] {
                    pairs.push((a, c));
                }
            }
        }
    }
    b.absorb(exec.map(&pairs, |(a, c)| {
        let lhs = psi(&concat_paths(a, c));
        let rhs = concat_diagrams(&psi(a), &psi(c));
        (lhs != rhs).then(|| format!("psi({a} * {c}) = {lhs}, product is {rhs}"))
    }));
    let tl: Vec<Vec<BrauerDiagram>> = (0..=max_total).map(enumerate_tl_diagrams).collect();
    for i in 0..=max_total {
        for j in 0..=max_total - i {
            for x in &tl[i] {
                for y in &tl[j] {
                    let lhs = phi_tl(&concat_diagrams(x, y)).expect("TL");
                    let rhs = concat_paths(&phi_tl(x).expect("TL"), &phi_tl(y).expect("TL"));
                    b.check(lhs == rhs, || format!("phi_tl({x} {y}) = {lhs}, product is {rhs}"));
                }
            }
        }
    }
    b.note(format!("path pairs={}", pairs.len()));
    b.finish()
}

/// Structural facts behind the δ-sequence, checked on every diagram of
/// degree `n` and on every intermediate diagram of its δ-sequence.
pub fn lemmas(n: usize, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("lemmas", n);
    let diagrams = enumerate_diagrams(n);
    b.absorb(exec.map(&diagrams, lemma_failure));
    b.finish()
}

fn lemma_failure(d: &BrauerDiagram) -> Option<String> {
    let n = d.degree();
    let target = tl_projection(d);
    if tl_projection(&target) != target {
        return Some(format!("Π is not idempotent on {d}"));
    }
    let tree = right_chain_tree(d);
    let mut order = tree.first_meeting_order();
    order.sort_unstable();
    if tree.node_count() != n || order != (1..=n).collect::<Vec<_>>() {
        return Some(format!("right chain tree of {d} does not cover its arcs once"));
    }
    let mut sec = secondary_labels(d);
    sec.sort_unstable();
    if sec != (1..=n).collect::<Vec<_>>() {
        return Some(format!("secondary labels of {d} are not a permutation"));
    }
    let trace = delta_trace(d);
    let size = d.size();
    for step in &trace.steps {
        let c = &step.before;
        let mut settled = step.settled.clone();
        settled.sort_unstable();
        if settled != (1..=settled.len()).collect::<Vec<_>>() {
            return Some(format!("settled labels {settled:?} of {c} (from {d}) are not 1..r"));
        }
        let m = right_agreement(c, &target).expect("same degree");
        let y = size - m - 1;
        if !c.is_left_end(y) || !target.is_left_end(y) {
            return Some(format!("boundary vertex {} of {c} (from {d}) is not a left end in both", y + 1));
        }
        if y == 0 || !target.is_left_end(y - 1) {
            return Some(format!("left neighbour of boundary {} in Π({d}) is not a left end", y + 1));
        }
        if step.to <= step.from {
            return Some(format!("δ-move of arc {} in {d} is not positive", step.label));
        }
    }
    let forward = trace.replay_forward();
    if forward.last() != Some(&target) {
        return Some(format!("forward replay of {d} misses Π(D)"));
    }
    if trace.replay_backward() != *d {
        return Some(format!("backward replay of Π({d}) misses D"));
    }
    None
}

/// `κ` and the grid and rotation maps are bijective and mutually inverse.
pub fn simple(n: usize, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("simple", n);
    let diagrams = enumerate_diagrams(n);
    b.absorb(exec.map(&diagrams, |d| {
        let back = kappa_inverse(&kappa(d));
        (back != *d).then(|| format!("kappa_inverse(kappa({d})) = {back}"))
    }));
    let tuples = enumerate_tuples(n);
    b.absorb(exec.map(&tuples, |x| {
        if kappa(&kappa_inverse(x)) != *x {
            return Some(format!("kappa(kappa_inverse({x})) differs"));
        }
        let g = tuple_to_grid(x);
        if grid_to_tuple(&g) != *x {
            return Some(format!("grid round trip fails on {x}"));
        }
        let pts = g.points();
        let distinct: HashSet<_> = pts.iter().collect();
        if distinct.len() != pts.len() || pts.iter().any(|&(px, py)| px < -py) {
            return Some(format!("grid walk of {x} revisits or crosses x = -y"));
        }
        let p = grid_to_overhang(&g);
        (overhang_to_grid(&p).ok().as_ref() != Some(&g)).then(|| format!("rotation of {x} fails"))
    }));
    let images: HashSet<OverhangPath> = exec.map(&diagrams, simple_bijection).into_iter().collect();
    b.check(images.len() == double_factorial(n), || {
        format!("simple bijection has {} images", images.len())
    });
    if let Some(w) = simple_witness(n) {
        b.note(format!("witness {w}: simple {} vs phi {}", simple_bijection(&w), phi(&w)));
    }
    b.finish()
}

/// First diagram of degree `n` on which the two bijections differ.
pub fn simple_witness(n: usize) -> Option<BrauerDiagram> {
    enumerate_diagrams(n).into_iter().find(|d| simple_bijection(d) != phi(d))
}

/// Relations, decoupling and root-of-unity diagnostics for the walk module.
pub fn hecke(max_n: usize, exec: Exec) -> SuiteReport {
    let mut b = Builder::new("hecke", max_n);
    let mut relation_jobs: Vec<WalkModuleAction> = Vec::new();
    let mut skipped = Vec::new();
    for total in 2..=max_n {
        for a in 1..total {
            let c = total - a;
            for e in -6..=6 {
                if defined_offsets(a, c, e..=e).is_empty() {
                    skipped.push(format!("(({a}),({c})) e={e}"));
                } else {
                    relation_jobs.push(WalkModuleAction::two_rows(a, c, e));
                }
            }
        }
    }
    for (shape, charges) in [("((2,1))", vec![0]), ("((1),(1),(1))", vec![0, 5, 11])] {
        let shape: MultiShape = shape.parse().expect("literal shape");
        relation_jobs.push(WalkModuleAction::new(shape, charges).expect("charges fit"));
    }
    let results = exec.map(&relation_jobs, |m| {
        let gens = m.generator_matrices().expect("offset chosen with nonzero hooks");
        let report = verify_relations(&gens, Exec::Sequential);
        let failure = report.failures().next().map(|f| {
            format!("{} x={:?}: {} fails", m.shape(), m.charges(), f.name)
        });
        failure
    });
    b.absorb(results);
    b.note(format!("relations on {} modules; undefined full action skipped for {}", relation_jobs.len(), skipped.len()));

    // the nonnegative walks span a submodule at x_1 - x_2 = 1
    for total in 1..=max_n.max(6) {
        for a in 0..=total {
            let m = WalkModuleAction::two_rows(a, total - a, 1);
            match decoupling_report(&m, &BasisSubset::NonNegative, None) {
                Ok(r) => b.check(r.is_invariant(), || {
                    format!("nonnegative walks of {} leak at e=1", m.shape())
                }),
                Err(e) => b.check(false, || format!("{}: {e}", m.shape())),
            }
        }
    }

    // at x_1 - x_2 = 2 the walk 2211 is a quotient of ((2),(2))
    let m = WalkModuleAction::two_rows(2, 2, 2);
    let quotient = BasisSubset::Exclude(vec!["2211".parse().expect("literal walk")]);
    match decoupling_report(&m, &quotient, None) {
        Ok(r) => b.check(r.is_invariant(), || "2211 receives a nonzero coefficient at e=2".into()),
        Err(e) => b.check(false, || e.to_string()),
    }

    for l in [2i64, 3] {
        let m = WalkModuleAction::two_rows(l as usize + 1, l as usize + 1, 1);
        let q0 = QPoint::RootOfUnity(2 * l as u32);
        match decoupling_report(&m, &BasisSubset::Band { lo: 0, hi: l - 1 }, Some(&q0)) {
            Ok(r) => {
                b.checked += 1;
                let nonzero = r.nonzero_leaks().count();
                let poles = r.poles().count();
                b.note(format!(
                    "wall l={l} at {q0}: {nonzero} nonzero boundary coefficients, {poles} poles"
                ));
            }
            Err(e) => b.check(false, || e.to_string()),
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for n in 1..=3 {
            for r in [
                counts(n),
                roundtrip(n, Coverage::Exhaustive, Exec::Sequential),
                tl_restriction(n, Exec::Sequential),
                lemmas(n, Exec::Sequential),
                simple(n, Exec::Sequential),
            ] {
                assert!(r.passed(), "{r}");
            }
        }
        assert!(homomorphism(3, Exec::Parallel).passed());
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<usize> = (0..8).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(double_factorial(6), 10395);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = roundtrip(4, Coverage::Sampled { count: 50, seed: 7 }, Exec::Parallel);
        assert!(a.passed());
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_diagram(6, &mut r1), random_diagram(6, &mut r2));
        assert_eq!(random_path(6, &mut r1), random_path(6, &mut r2));
    }
}
