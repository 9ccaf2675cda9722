use std::fs;
use std::path::PathBuf;
use std::process::Command;

use cplus2asp::cli::run;

fn domain(name: &str) -> String {
    format!("{}/examples/domains/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str], stdin: &str) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cplus2asp").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn repl_transcript_matches_golden() {
    let input = fs::read_to_string(golden("repl.in")).unwrap();
    let r = cli(&[&domain("bw-test")], &input);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, fs::read_to_string(golden("repl.out")).unwrap());
    assert_eq!(r.err, fs::read_to_string(golden("repl.err")).unwrap());
}

#[test]
fn repl_ends_at_end_of_input() {
    let r = cli(&[&domain("lamp")], "queries\n");
    assert_eq!(r.code, 0);
    assert!(r.out.contains("  on  maxstep 0..3"), "{}", r.out);
}

#[test]
fn query_prints_plans_and_summary() {
    let r = cli(&[&domain("bw-test"), "query=simple"], "");
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("Solution 1:\n0: "), "{}", r.out);
    assert!(
        r.out
            .ends_with("query simple: found at maxstep 2, 1 solution\n"),
        "{}",
        r.out
    );
    assert!(r.err.starts_with("timings: load "), "{}", r.err);
}

#[test]
fn solution_count_limits_plans() {
    let r = cli(&[&domain("lamp"), "query=on", "maxstep=3", "all"], "");
    assert_eq!(r.code, 0);
    let all = r.out.matches("Solution ").count();
    assert!(all > 1, "{}", r.out);
    let r = cli(
        &[&domain("lamp"), "query=on", "maxstep=3", "sol=1", "2"],
        "",
    );
    assert_eq!(r.out.matches("Solution ").count(), 2);
    assert!(
        r.err.contains("warning: solution count 1 replaced by 2"),
        "{}",
        r.err
    );
}

#[test]
fn exhaustion_exits_with_one() {
    let r = cli(&[&domain("lamp"), "query=on", "maxstep=0"], "");
    assert_eq!(r.code, 1);
    assert_eq!(r.out, "query on: no plan with maxstep in 0..0\n");
}

#[test]
fn usage_errors_exit_with_two() {
    let r = cli(&[&domain("lamp"), "--language=bc"], "");
    assert_eq!(r.code, 2);
    assert!(r.err.contains("language mode not supported in this build"));
    assert_eq!(cli(&[&domain("lamp"), "query=nothing"], "").code, 2);
    assert_eq!(cli(&[&domain("no-such-file"), "query=x"], "").code, 2);
    assert_eq!(cli(&[&domain("lamp"), "--to-grounder"], "").code, 2);
    assert_eq!(
        cli(&[&domain("lamp"), "--from-grounder", "query=on"], "").code,
        2
    );
    assert_eq!(cli(&["--to-solver"], "").code, 2);
}

#[test]
fn stage_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (file, query) in [("bw-test", "simple"), ("ferryman", "cross"), ("lamp", "on")] {
        for mode in ["--mode=incremental", "--mode=static"] {
            let whole = cli(&[&domain(file), &format!("query={query}"), "all", mode], "");
            assert_eq!(whole.code, 0, "{}", whole.err);
            for stage in ["pre-processor", "grounder"] {
                let dump = dir.path().join(format!("{file}-{stage}.lp"));
                let staged = cli(
                    &[
                        &domain(file),
                        &format!("query={query}"),
                        &format!("--to-{stage}"),
                        &format!("--{stage}-output={}", dump.display()),
                    ],
                    "",
                );
                assert_eq!(staged.code, 0, "{}", staged.err);
                assert!(staged.out.is_empty());
                for from in ["--from-pre-processor", "--from-grounder"] {
                    let resumed = cli(
                        &[
                            &dump.to_string_lossy(),
                            from,
                            &format!("query={query}"),
                            "all",
                            mode,
                        ],
                        "",
                    );
                    assert_eq!(resumed.code, 0, "{file} {stage} {from}: {}", resumed.err);
                    assert_eq!(resumed.out, whole.out, "{file} {stage} {from} {mode}");
                }
            }
        }
    }
}

#[test]
fn pre_processor_dump_goes_to_standard_output() {
    let r = cli(&[&domain("bw-test"), "--to-pre-processor"], "");
    assert_eq!(r.code, 0);
    assert!(
        r.out
            .starts_with("% cplus2asp native 1\nprogram incremental\nquery simple\n"),
        "{}",
        &r.out[..80]
    );
}

#[test]
fn solver_stage_prints_answer_sets() {
    let r = cli(&[&domain("lamp"), "query=on", "--to-solver"], "");
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("Answer 1 (maxstep 1):\n"), "{}", r.out);
    assert!(r.out.ends_with("Models: 1\n"), "{}", r.out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cplus2asp");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&[&domain("lamp"), "query=on"]), Some(0));
    assert_eq!(code(&[&domain("lamp"), "query=on", "maxstep=0"]), Some(1));
    assert_eq!(code(&[&domain("lamp"), "--language=bc"]), Some(2));
    assert_eq!(code(&["--bogus"]), Some(2));
}
