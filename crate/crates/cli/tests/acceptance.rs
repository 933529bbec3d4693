//! Acceptance suite: one PASS/FAIL line per criterion, sub-checks indented.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail; the analysis lives
//! in their detail lines. The process exits non-zero if any other criterion
//! fails or a known-red one unexpectedly passes.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use brick_cli::brick_file::{emit_brick_file, parse_brick_file};
use brick_cli::commands::{builtin_table, cmd_genus, cmd_graph, cmd_table_chi, cmd_validate};
use brick_core::constructions::{
    default_joints, fixture, random_unit_complex, zz_embedded, zz_immersed, zz_zigzag, ZZParams, FIXTURE_NAMES,
};
use brick_core::scalar::{int, ratio};
use brick_core::{
    apply_schedule, brick_graph, corners, standard_schedule, surface_stats, two_opposite_covered, validate, voxel_chi,
    BrickComplex, Operator, RefinementSchedule, Scalar,
};

const KNOWN_RED: [usize; 2] = [4, 8];

struct Outcome {
    checks: Vec<(bool, String)>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        self.checks.push((ok, what.into()));
        ok
    }

    /// Recorded but not counted towards pass/fail.
    fn note(&mut self, what: impl Into<String>) {
        self.checks.push((true, format!("note: {}", what.into())));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(ok, _)| *ok)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn table_totals(name: &str) -> (Vec<i64>, Duration) {
    let table = builtin_table(name).unwrap();
    let (report, took) = timed(|| cmd_table_chi(&table).unwrap());
    let got = ["V", "E", "F", "chi", "genus"].iter().map(|k| report.body[k].as_i64().unwrap_or(i64::MIN)).collect();
    (got, took)
}

fn criterion_1(o: &mut Outcome) {
    let (got, took) = table_totals("buttressed-octahedron");
    o.check(got == [140, 324, 160, -24, 13], format!("V, E, F, chi, genus = {got:?}, expected [140, 324, 160, -24, 13]"));
    o.check(took < Duration::from_millis(1), format!("runtime {took:?} < 1 ms"));
}

fn criterion_2(o: &mut Outcome) {
    let (got, _) = table_totals("zz");
    o.check(got == [32, 72, 36, -4, 3], format!("V, E, F, chi, genus = {got:?}, expected [32, 72, 36, -4, 3]"));
}

fn criterion_3(o: &mut Outcome) {
    let (_, took) = timed(|| {
        let c = zz_immersed(&ZZParams::default()).unwrap();
        o.check(c.len() == 10, format!("{} bricks", c.len()));
        let r = validate(&c);
        let overlaps = r.improper_pairs.iter().filter(|x| x.class.kind() == "volume-overlap").count();
        o.check(!r.properly_joined && overlaps >= 1, format!("properly_joined = {}, {overlaps} volume-overlap pairs", r.properly_joined));
        let s = surface_stats(&c, &r).unwrap();
        o.check((s.v, s.e, s.f, s.chi) == (32, 72, 36, -4), format!("surface (V, E, F, chi) = ({}, {}, {}, {})", s.v, s.e, s.f, s.chi));
        let g = brick_graph(&c, &r).unwrap();
        let degrees_ok = g.degree.iter().all(|(l, d)| *d == if l.starts_with('C') { 3 } else { 2 });
        o.check(degrees_ok, "cube degree 3, connector degree 2");
        o.check(corners(&g).len() == 10, format!("{} of 10 bricks are corners", corners(&g).len()));
        let refined = apply_schedule(&c, &standard_schedule(&c)).unwrap();
        let rr = validate(&refined);
        let rg = brick_graph(&refined, &rr).unwrap();
        o.check(refined.len() == 56, format!("standard schedule gives {} bricks", refined.len()));
        o.check(rg.min_degree() >= Some(4), format!("refined min degree {:?}", rg.min_degree()));
        o.check(corners(&rg).is_empty(), format!("refined corners: {}", corners(&rg).len()));
    });
    o.check(took < Duration::from_secs(1), format!("runtime {took:?} < 1 s"));
}

fn criterion_4(o: &mut Outcome) {
    let p = ZZParams::default();
    let (built, took) = timed(|| zz_embedded(&p));
    o.check(took < Duration::from_secs(2), format!("builder runtime {took:?} < 2 s"));
    match built {
        Ok(c) => {
            o.check(true, "builder accepted the layout");
            check_embedded(o, &c);
        }
        Err(e) => {
            o.check(false, format!("builder rejected the layout: {e}"));
            o.note("no joint placement on the C2->C3 hop clears both x1 (at C3) and x3 (at C2),");
            o.note("and only the hop pair {x2, z2} would cover all four overlaps; see the decisions ledger");
            o.note("sub-checks below run on the unchecked zig-zag layout:");
            let c = zz_zigzag(&p, &default_joints()).unwrap();
            check_embedded(o, &c);
        }
    }
}

fn check_embedded(o: &mut Outcome, c: &BrickComplex) {
    o.check(c.len() == 14, format!("{} bricks", c.len()));
    let r = validate(c);
    let bad: Vec<String> = r.improper_pairs.iter().map(|x| format!("{}/{} {}", x.a, x.b, x.class.kind())).collect();
    o.check(r.properly_joined, format!("properly joined (improper: {})", if bad.is_empty() { "none".into() } else { bad.join(", ") }));
    let cover = two_opposite_covered(c, &r).unwrap();
    o.check(cover.values().all(|v| *v), format!("two opposite faces covered on {}/{} bricks", cover.values().filter(|v| **v).count(), cover.len()));
    let s = surface_stats(c, &r).unwrap();
    o.check(s.edge_manifold && s.vertex_manifold, format!("edge-manifold {}, vertex-manifold {}", s.edge_manifold, s.vertex_manifold));
    o.check(s.surface_components == 1, format!("{} surface component(s)", s.surface_components));
    o.check(s.chi == -4 && s.genus == Some(3), format!("chi {} genus {:?}", s.chi, s.genus));
    match apply_schedule(c, &standard_schedule(c)) {
        Ok(refined) => {
            let rr = validate(&refined);
            let g = brick_graph(&refined, &rr).unwrap();
            o.check(refined.len() == 80, format!("refined to {} bricks", refined.len()));
            o.check(g.min_degree() >= Some(4) && corners(&g).is_empty(), format!("refined min degree {:?}, {} corners", g.min_degree(), corners(&g).len()));
        }
        Err(e) => {
            o.check(false, format!("refinement failed: {e}"));
        }
    }
}

fn criterion_5(o: &mut Outcome) {
    let (_, took) = timed(|| {
        let mut agree = 0;
        let seeds = 0..60u64;
        let total = seeds.clone().count();
        for seed in seeds {
            let c = random_unit_complex(seed, 40, 8);
            let r = validate(&c);
            let chi = surface_stats(&c, &r).unwrap().chi;
            let oracle = voxel_chi(&c, &int(1)).unwrap();
            if r.properly_joined && chi == oracle {
                agree += 1;
            } else {
                o.check(false, format!("seed {seed}: chi {chi}, voxel {oracle}, properly joined {}", r.properly_joined));
            }
        }
        o.check(agree == total, format!("{agree}/{total} seeded complexes (<= 40 unit bricks, 8^3 grid) agree with the voxel oracle"));
    });
    o.check(took < Duration::from_secs(10), format!("runtime {took:?} < 10 s"));
}

fn criterion_6(o: &mut Outcome) {
    for (name, expected) in [("cube", 0), ("ring-3x3", 1), ("block-2x2x2", 0)] {
        let c = fixture(name).unwrap();
        let s = surface_stats(&c, &validate(&c)).unwrap();
        o.check(s.genus == Some(expected), format!("{name}: genus {:?}, expected {expected}", s.genus));
    }
}

fn schedules(c: &BrickComplex) -> Vec<(&'static str, RefinementSchedule)> {
    let uniform = |op: Operator| {
        let mut s = RefinementSchedule::new();
        for b in c.bricks() {
            s.set(b.id(), op.clone());
        }
        s
    };
    vec![
        ("standard", standard_schedule(c)),
        ("split x at 1/3", uniform(Operator::SplitAt { direction: 0, fractions: vec![ratio(1, 3)] })),
        ("split w at 1/4, 2/3", uniform(Operator::SplitAt { direction: 2, fractions: vec![ratio(1, 4), ratio(2, 3)] })),
        ("quarter along v", uniform(Operator::QuarterLengthwise(Some(1)))),
    ]
}

fn criterion_7(o: &mut Outcome) {
    let mut cases: Vec<(BrickComplex, Vec<(&'static str, RefinementSchedule)>)> = FIXTURE_NAMES
        .iter()
        .map(|n| {
            let c = fixture(n).unwrap();
            let s = schedules(&c);
            (c, s)
        })
        .collect();
    // Generator-indexed cuts do not line up across the skew connectors, so
    // the ZZ-object only gets the standard schedule.
    let imm = zz_immersed(&ZZParams::default()).unwrap();
    let standard = vec![("standard", standard_schedule(&imm))];
    cases.push((imm, standard));
    let expected_runs: usize = cases.iter().map(|(_, s)| s.len()).sum();
    let volume = |c: &BrickComplex| c.bricks().iter().map(|b| b.volume()).sum::<Scalar>();
    let mut runs = 0;
    for (c, list) in &cases {
        let r = validate(c);
        let chi = surface_stats(c, &r).unwrap().chi;
        for (label, s) in list {
            let refined = match apply_schedule(c, s) {
                Ok(x) => x,
                Err(e) => {
                    o.check(false, format!("{} / {label}: {e}", c.name));
                    continue;
                }
            };
            let rr = validate(&refined);
            let ok = volume(&refined) == volume(c)
                && rr.properly_joined == r.properly_joined
                && surface_stats(&refined, &rr).unwrap().chi == chi;
            if !ok {
                o.check(false, format!("{} / {label}: invariant broken", c.name));
            }
            runs += 1;
        }
    }
    o.check(runs == expected_runs, format!("volume, proper joining and chi preserved in {runs} refinements of {} complexes", cases.len()));
}

/// Degrees after the standard schedule of every child of a brick with an
/// opposite covered pair.
fn local_sufficiency(c: &BrickComplex) -> (usize, bool) {
    let r = validate(c);
    let cover = two_opposite_covered(c, &r).unwrap();
    let refined = apply_schedule(c, &standard_schedule(c)).unwrap();
    let g = brick_graph(&refined, &validate(&refined)).unwrap();
    let covered: Vec<&String> = cover.iter().filter(|(_, ok)| **ok).map(|(l, _)| l).collect();
    let ok = covered.iter().all(|parent| {
        let prefix = format!("{parent}/");
        g.degree.iter().filter(|(l, _)| l.starts_with(&prefix)).all(|(_, d)| *d >= 4)
    });
    (covered.len(), ok)
}

fn criterion_8(o: &mut Outcome) {
    // zz-immersed: premise fails (not properly joined) but the conclusion is checked anyway.
    let imm = zz_immersed(&ZZParams::default()).unwrap();
    let refined = apply_schedule(&imm, &standard_schedule(&imm)).unwrap();
    let g = brick_graph(&refined, &validate(&refined)).unwrap();
    o.note(format!("zz-immersed (not properly joined): refined min degree {:?}", g.min_degree()));
    match zz_embedded(&ZZParams::default()) {
        Ok(c) => {
            let refined = apply_schedule(&c, &standard_schedule(&c)).unwrap();
            let g = brick_graph(&refined, &validate(&refined)).unwrap();
            o.check(g.min_degree() >= Some(4), format!("zz-embedded: refined min degree {:?}", g.min_degree()));
        }
        Err(e) => {
            o.check(false, format!("zz-embedded cannot be exercised: {e}"));
        }
    }
    // In an axis-aligned complex the brick with the lexicographically least
    // min corner has no covered lower face on any axis, so the premise never
    // holds. The global check is vacuous there; the per-brick form is not.
    let mut cases: Vec<BrickComplex> = FIXTURE_NAMES.iter().map(|n| fixture(n).unwrap()).collect();
    cases.extend((0..6).map(|s| random_unit_complex(s, 25, 5)));
    let mut premise_holds = 0;
    let mut local_bricks = 0;
    let mut local_ok = true;
    for c in &cases {
        let r = validate(c);
        if two_opposite_covered(c, &r).unwrap().values().all(|v| *v) {
            premise_holds += 1;
        }
        let (n, ok) = local_sufficiency(c);
        local_bricks += n;
        local_ok &= ok;
    }
    o.note(format!("{} rectilinear cases; premise holds on {premise_holds} (always 0 for axis-aligned bricks)", cases.len()));
    o.check(premise_holds == 0, "rectilinear premise is vacuous as predicted");
    o.check(
        local_ok && local_bricks > 0,
        format!("per-brick form: children of all {local_bricks} opposite-covered bricks have degree >= 4"),
    );
    o.check(false, "property not exercised on any properly joined complex satisfying the premise");
}

fn canonical_cases() -> Vec<BrickComplex> {
    let mut cases: Vec<BrickComplex> = FIXTURE_NAMES.iter().map(|n| fixture(n).unwrap()).collect();
    let imm = zz_immersed(&ZZParams::default()).unwrap();
    cases.push(apply_schedule(&imm, &standard_schedule(&imm)).unwrap());
    cases.push(imm);
    cases.push(zz_zigzag(&ZZParams::default(), &default_joints()).unwrap());
    cases.push(random_unit_complex(7, 40, 8));
    cases
}

fn reports(c: &BrickComplex) -> String {
    [
        cmd_validate(c).to_json(),
        cmd_graph(c, false).unwrap().to_json(),
        cmd_genus(c, None).unwrap().to_json(),
    ]
    .join("\n")
}

fn criterion_9(o: &mut Outcome) {
    let cases = canonical_cases();
    let round_trips = cases
        .iter()
        .filter(|c| {
            let text = emit_brick_file(c);
            parse_brick_file(&text).map(|back| emit_brick_file(&back) == text).unwrap_or(false)
        })
        .count();
    o.check(round_trips == cases.len(), format!("parse(emit(c)) re-emits identically for {round_trips}/{} complexes", cases.len()));
    let baseline: Vec<String> = cases.iter().map(reports).collect();
    let repeated = (0..3).all(|_| cases.iter().map(reports).collect::<Vec<_>>() == baseline);
    o.check(repeated, "reports identical across 3 repeated runs");
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let got: Vec<String> = pool.install(|| cases.iter().map(reports).collect());
        o.check(got == baseline, format!("reports identical with {threads} thread(s)"));
    }
}

fn main() {
    let criteria: [(usize, &str, fn(&mut Outcome)); 9] = [
        (1, "buttressed-octahedron table totals", criterion_1),
        (2, "ZZ table totals", criterion_2),
        (3, "zz-immersed structure and refinement", criterion_3),
        (4, "zz-embedded: 14 bricks, properly joined, genus 3, cornerless after refinement", criterion_4),
        (5, "chi agrees with the voxel oracle", criterion_5),
        (6, "known-genus fixtures", criterion_6),
        (7, "refinement invariants", criterion_7),
        (8, "sufficiency: opposite-covered implies cornerless after refinement", criterion_8),
        (9, "round-trip and determinism", criterion_9),
    ];
    let mut failed = BTreeSet::new();
    for (id, title, run) in criteria {
        let mut o = Outcome::new();
        run(&mut o);
        let pass = o.passed();
        println!("criterion {id}: {} - {title}", if pass { "PASS" } else { "FAIL" });
        for (ok, what) in &o.checks {
            let mark = if what.starts_with("note:") { " " } else if *ok { "+" } else { "-" };
            println!("    {mark} {what}");
        }
        if !pass {
            failed.insert(id);
        }
    }
    let expected: BTreeSet<usize> = KNOWN_RED.into_iter().collect();
    println!("failing criteria: {failed:?}; documented as unattainable: {expected:?}");
    if failed != expected {
        eprintln!("acceptance outcome differs from the documented one");
        std::process::exit(1);
    }
}
