//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use ibench_core::check::{CheckReport, Status};
use ibench_core::config::{FieldMode, RunConfig};
use ibench_core::field::DEFAULT_PRIME;
use ibench_core::hecke::Relation;
use ibench_core::registry::{self, CheckInfo};

const MOD_P: FieldMode = FieldMode::ModP(DEFAULT_PRIME);

struct Run {
    n: usize,
    particles: usize,
    seed: u64,
    field: FieldMode,
    states: usize,
    points: usize,
    strict: bool,
}

impl Run {
    fn at(n: usize, particles: usize) -> Self {
        Run {
            n,
            particles,
            seed: 1,
            field: FieldMode::Rational,
            states: 5,
            points: 8,
            strict: false,
        }
    }

    fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }

    fn field(mut self, f: FieldMode) -> Self {
        self.field = f;
        self
    }

    fn states(mut self, s: usize) -> Self {
        self.states = s;
        self
    }

    fn points(mut self, p: usize) -> Self {
        self.points = p;
        self
    }

    fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    fn config(&self) -> RunConfig {
        RunConfig {
            n: self.n,
            particles: self.particles,
            seed: self.seed,
            field: self.field,
            states: self.states,
            points: self.points,
            strict: self.strict,
            ..RunConfig::default()
        }
    }

    fn checks(&self, checks: &[CheckInfo]) -> Vec<CheckReport> {
        registry::run_checks(&self.config(), checks).expect("valid configuration")
    }

    fn run(&self, ids: &[&str]) -> Vec<CheckReport> {
        self.checks(&registry::lookup(ids).expect("catalog ids"))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

/// Collects failures as readable strings.
#[derive(Default)]
struct Tally {
    reports: usize,
    problems: Vec<String>,
}

impl Tally {
    fn pass(&mut self, reps: &[CheckReport]) {
        for r in reps {
            self.reports += 1;
            if r.status != Status::Pass {
                self.problems.push(format!("{} (n={}, N={}, seed {}) {:?}", r.id, r.n, r.particles, r.seed, r.status));
            }
        }
    }

    fn witness(&mut self, reps: &[CheckReport]) {
        for r in reps {
            self.reports += 1;
            if r.status != Status::Pass || r.witness.is_none() {
                self.problems.push(format!("{} (n={}, N={}) produced no witness", r.id, r.n, r.particles));
            }
        }
    }

    fn require(&mut self, ok: bool, what: String) {
        if !ok {
            self.problems.push(what);
        }
    }

    fn verdict(self, detail: String) -> (bool, String) {
        if self.problems.is_empty() {
            (true, format!("{} reports; {detail}", self.reports))
        } else {
            (false, format!("{detail}; problems: {}", self.problems.join("; ")))
        }
    }
}

fn hecke() -> (bool, String) {
    let ids: Vec<&str> = Relation::ALL.iter().map(|r| r.id()).collect();
    let mut t = Tally::default();
    let (_, took) = timed(|| {
        for (n, nn) in [(2, 2), (2, 3), (3, 2)] {
            for seed in 1..=3 {
                t.pass(&Run::at(n, nn).seed(seed).strict().run(&ids));
            }
        }
    });
    t.require(took < Duration::from_secs(60), format!("runtime {took:.1?} exceeds 60 s"));
    t.verdict(format!("rational, strict, 5 states x 8 points, 3 seeds, {took:.1?}"))
}

fn negative_controls() -> (bool, String) {
    let mut t = Tally::default();
    t.witness(&Run::at(2, 2).run(&["negative-v-perturbed", "negative-g-perturbed", "negative-b-inconsistent"]));
    t.witness(&Run::at(2, 3).run(&["negative-v-perturbed", "negative-g-perturbed"]));
    t.verdict("rational; all three at (2,2), Hecke controls also at (2,3)".into())
}

fn yangian() -> (bool, String) {
    let mut t = Tally::default();
    for nn in [1, 2] {
        t.pass(&Run::at(2, nn).run(&["rtt-projected", "com-at-m2"]));
    }
    for (n, nn) in [(2, 1), (2, 2), (3, 1)] {
        t.pass(&Run::at(n, nn).run(&["qdet-closed-form"]));
    }
    let central = Run::at(2, 2).states(5).run(&["qdet-central"]);
    t.pass(&central);
    t.verdict("rational; qdet centrality at 5 sampled (u, v)".into())
}

fn reflection() -> (bool, String) {
    let mut t = Tally::default();
    let mut times = Vec::new();
    for nn in [1, 2] {
        let (reps, took) = timed(|| Run::at(2, nn).run(&["reflection-projected"]));
        t.pass(&reps);
        if nn == 2 {
            times.push(("rational", took, Duration::from_secs(300)));
        }
        t.witness(&Run::at(2, nn).run(&["negative-b-inconsistent"]));
    }
    let (reps, took) = timed(|| Run::at(2, 2).field(MOD_P).run(&["reflection-projected"]));
    t.pass(&reps);
    times.push(("mod-p", took, Duration::from_secs(30)));
    let mut detail = Vec::new();
    for (mode, took, limit) in times {
        t.require(took < limit, format!("{mode} runtime {took:.1?} exceeds {limit:?}"));
        detail.push(format!("{mode} {took:.1?}"));
    }
    t.verdict(format!("(2,2) with 5 states x 8 points: {}", detail.join(", ")))
}

fn determinants() -> (bool, String) {
    let mut t = Tally::default();
    for nn in [1, 2] {
        t.pass(&Run::at(2, nn).states(5).run(&["sdet-center-identity", "sdet-closed-form", "sdet-projected"]));
    }
    t.verdict("rational; 5 sampled u per identity".into())
}

fn series() -> (bool, String) {
    let mut t = Tally::default();
    for nn in [1, 2] {
        t.pass(&Run::at(2, nn).run(&["sdet-series", "sdet-hamiltonian", "charge-i0"]));
    }
    t.verdict("rational; orders 0 to 3, Hamiltonian extraction, I_0".into())
}

fn charges() -> (bool, String) {
    let mut t = Tally::default();
    t.pass(&Run::at(2, 2).run(&["charges-commute", "charges-series"]));
    t.verdict("rational; k, l <= 4 at n=2, N=2".into())
}

fn hamiltonians() -> (bool, String) {
    let mut t = Tally::default();
    for nn in [2, 3] {
        t.pass(&Run::at(2, nn).states(10).run(&["hamiltonian-explicit-reflection", "hamiltonian-explicit-yangian"]));
        t.pass(&Run::at(2, nn).run(&["hamiltonian-effective-reflection", "hamiltonian-effective-yangian"]));
    }
    t.pass(&Run::at(2, 2).states(3).run(&["symmetry-reflection", "symmetry-yangian"]));
    t.verdict("rational; explicit forms on 10 states, symmetry for all entries at 3 sampled u".into())
}

fn momentum() -> (bool, String) {
    let mut t = Tally::default();
    let reps = Run::at(2, 2).run(&["momentum-yangian", "momentum-reflection"]);
    t.pass(&reps[..1]);
    t.require(reps[0].witness.is_none(), "Yangian sector momentum has a residual".into());
    t.witness(&reps[1..]);
    let w = reps[1].witness.as_ref().map(|w| format!("witness at {} component {}", w.state, w.component));
    t.verdict(format!("rational; {}", w.unwrap_or_default()))
}

fn determinism_and_agreement() -> (bool, String) {
    let mut t = Tally::default();
    let all = registry::catalog();
    let strip = |v: Vec<CheckReport>| v.iter().map(CheckReport::untimed).collect::<Vec<_>>();
    let again = Run::at(2, 2).field(MOD_P).seed(7);
    let first = strip(again.checks(&all));
    let second = strip(again.checks(&all));
    t.require(first == second, "mod-p reruns differ".into());
    let light = |s: u64, f: FieldMode| Run::at(2, 2).seed(s).field(f).states(1).points(2);
    let r1 = strip(light(1, FieldMode::Rational).checks(&all));
    let r2 = strip(light(1, FieldMode::Rational).checks(&all));
    t.require(r1 == r2, "rational reruns differ".into());
    let mut compared = 0;
    for seed in 1..=3 {
        let q = if seed == 1 { r1.clone() } else { light(seed, FieldMode::Rational).checks(&all) };
        let p = light(seed, MOD_P).checks(&all);
        for (a, b) in q.iter().zip(&p) {
            compared += 1;
            t.require(
                a.id == b.id && a.status == b.status && a.witness.is_some() == b.witness.is_some(),
                format!("{} seed {seed}: rational {:?} vs mod-p {:?}", a.id, a.status, b.status),
            );
        }
    }
    t.reports = compared;
    t.verdict(format!("{} checks x 3 seeds compared; reruns identical", all.len()))
}

fn main() {
    let criteria: [(&str, fn() -> (bool, String)); 10] = [
        ("Hecke relations", hecke),
        ("negative controls", negative_controls),
        ("Yangian", yangian),
        ("reflection equation", reflection),
        ("determinants", determinants),
        ("series", series),
        ("charges", charges),
        ("Hamiltonians", hamiltonians),
        ("momentum", momentum),
        ("determinism and field agreement", determinism_and_agreement),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let ((ok, detail), took) = timed(f);
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{took:.1?}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
