//! Subcommand behavior, exercised through the compiled binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn revsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn synth_small(dir: &Path, out: &str, groups: &str, per_group: &str, mics: &str) {
    let status = revsim(
        &[
            "--seed", "11", "--output-dir", out,
            "synth",
            "--groups", groups,
            "--per-group", per_group,
            "--mics", mics,
            "--t60-min", "0.3",
            "--t60-max", "0.9",
            "--length-s", "0.5",
            "--sample-rate", "16000",
            "--noise-floor-db", "-65",
        ],
        dir,
    );
    assert_ok(&status);
}

fn write_config(dir: &Path, name: &str, manifest: &str, metrics: &str, out: &str) -> String {
    let text = format!(
        "manifest = \"{manifest}\"\n\
         metrics = [{metrics}]\n\
         seed = 3\n\
         output_dir = \"{out}\"\n\
         [preprocess]\n\
         t_mix_ms = 2.0\n\
         [pc]\n\
         stft_window = 256\n\
         stft_hop = 64\n\
         kernel_side = 16\n\
         stride = 4\n\
         [bands]\n\
         centers = [500.0, 1000.0, 2000.0, 4000.0]\n\
         floor_db = -18.0\n"
    );
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn synth_writes_wavs_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "3", "4", "2");
    let corpus = dir.path().join("corpus");
    let wavs = fs::read_dir(&corpus)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "wav")
        })
        .count();
    assert_eq!(wavs, 12);
    let manifest = fs::read_to_string(corpus.join("manifest.csv")).unwrap();
    assert_eq!(manifest.lines().count(), 13); // header + 12 rows
    assert!(manifest.starts_with("id,path,n_reflective_panels,mic_position"));
}

#[test]
fn synth_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "a", "2", "3", "1");
    synth_small(dir.path(), "b", "2", "3", "1");
    let pick = |sub: &str| {
        let mut wavs: Vec<_> = fs::read_dir(dir.path().join(sub))
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|x| x == "wav"))
            .collect();
        wavs.sort();
        wavs
    };
    let (a, b) = (pick("a"), pick("b"));
    assert_eq!(a.len(), b.len());
    for (pa, pb) in a.iter().zip(&b) {
        assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
    }
    assert_eq!(
        fs::read(dir.path().join("a/manifest.csv")).unwrap(),
        fs::read(dir.path().join("b/manifest.csv")).unwrap()
    );
}

#[test]
fn synth_rejects_zero_groups() {
    let dir = tempfile::tempdir().unwrap();
    let out = revsim(&["synth", "--groups", "0"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn synth_default_shape_is_11_by_25() {
    let dir = tempfile::tempdir().unwrap();
    let out = revsim(
        &[
            "--seed", "1", "--output-dir", "corpus",
            "synth", "--length-s", "0.25", "--sample-rate", "8000",
        ],
        dir.path(),
    );
    assert_ok(&out);
    let wavs = fs::read_dir(dir.path().join("corpus"))
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "wav")
        })
        .count();
    assert_eq!(wavs, 275);
    let manifest = fs::read_to_string(dir.path().join("corpus/manifest.csv")).unwrap();
    assert_eq!(manifest.lines().count(), 276);
}

#[test]
fn output_dir_env_var_is_the_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_revsim"))
        .args([
            "--seed", "2",
            "synth", "--groups", "2", "--per-group", "1", "--mics", "1",
            "--length-s", "0.25", "--sample-rate", "8000",
        ])
        .env("REVSIM_OUTPUT_DIR", dir.path().join("from_env"))
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_ok(&out);
    assert!(dir.path().join("from_env/manifest.csv").exists());
}

#[test]
fn jobs_flag_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "2", "3", "1");
    let cfg = write_config(dir.path(), "run.toml", "corpus/manifest.csv", "\"esr\", \"mss\"", "par");
    assert_ok(&revsim(&["compute", "--config", &cfg], dir.path()));
    assert_ok(&revsim(
        &["--jobs", "1", "--output-dir", "serial", "compute", "--config", &cfg],
        dir.path(),
    ));
    assert_eq!(
        fs::read(dir.path().join("par/results_std.csv")).unwrap(),
        fs::read(dir.path().join("serial/results_std.csv")).unwrap()
    );
}

#[test]
fn compute_two_entries_esr() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "2", "1", "1");
    let cfg = write_config(dir.path(), "run.toml", "corpus/manifest.csv", "\"esr\"", "out");
    assert_ok(&revsim(&["compute", "--config", &cfg], dir.path()));

    let raw = fs::read_to_string(dir.path().join("out/results_raw.csv")).unwrap();
    let lines: Vec<&str> = raw.lines().collect();
    assert_eq!(lines[0], "metric,ref_id,analyzed_id,value");
    assert_eq!(lines.len(), 5); // header + 2x2 pairs
    let zeros = lines[1..]
        .iter()
        .filter(|l| l.ends_with(",0") && {
            let mut parts = l.split(',');
            let r = parts.nth(1).unwrap();
            let a = parts.next().unwrap();
            r == a
        })
        .count();
    assert_eq!(zeros, 2, "{raw}");
}

#[test]
fn compute_all_metrics_row_count() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "5", "5", "5");
    let cfg = write_config(
        dir.path(),
        "run.toml",
        "corpus/manifest.csv",
        "\"pc\", \"edc\", \"mss\", \"esr\"",
        "out",
    );
    assert_ok(&revsim(&["compute", "--config", &cfg], dir.path()));
    let std_text = fs::read_to_string(dir.path().join("out/results_std.csv")).unwrap();
    assert_eq!(std_text.lines().count(), 1 + 4 * 625);
    assert!(std_text.starts_with("metric,ref_id,analyzed_id,value,value_std"));
}

#[test]
fn compute_rejects_unknown_metric_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("bad.toml");
    fs::write(&cfg_path, "manifest = \"nope.csv\"\nmetrics = [\"pc\", \"cepstral\"]\n").unwrap();
    let out = revsim(
        &["compute", "--config", cfg_path.to_str().unwrap()],
        dir.path(),
    );
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown variant"), "{stderr}");
}

#[test]
fn metrics_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "2", "2", "1");
    let cfg = write_config(
        dir.path(),
        "run.toml",
        "corpus/manifest.csv",
        "\"pc\", \"edc\", \"mss\", \"esr\"",
        "out",
    );
    assert_ok(&revsim(
        &["--metrics", "esr", "compute", "--config", &cfg],
        dir.path(),
    ));
    let raw = fs::read_to_string(dir.path().join("out/results_raw.csv")).unwrap();
    assert!(raw.lines().skip(1).all(|l| l.starts_with("esr,")));
}

#[test]
fn aggregate_writes_matrix_and_respects_filter() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "3", "4", "2");
    let cfg = write_config(
        dir.path(),
        "run.toml",
        "corpus/manifest.csv",
        "\"esr\", \"mss\"",
        "out",
    );
    assert_ok(&revsim(&["compute", "--config", &cfg], dir.path()));

    assert_ok(&revsim(
        &[
            "--output-dir", "agg",
            "aggregate",
            "--results", "out/results_std.csv",
            "--manifest", "corpus/manifest.csv",
            "--group-by", "partition",
            "--svg",
        ],
        dir.path(),
    ));
    let matrix = fs::read_to_string(dir.path().join("agg/median_esr_partition.csv")).unwrap();
    assert!(matrix.starts_with("partition,"));
    assert_eq!(matrix.lines().count(), 4); // header + 3 partitions
    // One heatmap per metric, sharing one color scale line.
    let esr_svg = fs::read_to_string(dir.path().join("agg/median_esr_partition.svg")).unwrap();
    let mss_svg = fs::read_to_string(dir.path().join("agg/median_mss_partition.svg")).unwrap();
    let scale_line = |svg: &str| {
        svg.lines()
            .find(|l| l.contains("scale "))
            .unwrap()
            .to_string()
    };
    assert_eq!(scale_line(&esr_svg), scale_line(&mss_svg));

    // Panels range covering only the top group (55).
    assert_ok(&revsim(
        &[
            "--output-dir", "agg2",
            "aggregate",
            "--results", "out/results_std.csv",
            "--manifest", "corpus/manifest.csv",
            "--group-by", "mic",
            "--filter-panels", "50:55",
        ],
        dir.path(),
    ));
    let filtered = fs::read_to_string(dir.path().join("agg2/median_esr_mic_position.csv")).unwrap();
    assert_eq!(filtered.lines().count(), 3); // header + mic rows 1,2
}

#[test]
fn sweep_outputs_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "3", "4", "2");
    let cfg = write_config(dir.path(), "run.toml", "corpus/manifest.csv", "\"esr\"", "out");

    // Unknown target id fails.
    let out = revsim(
        &["sweep", "--config", &cfg, "--target", "missing"],
        dir.path(),
    );
    assert!(!out.status.success());

    // n-per-group = 1 yields an all-zero std column.
    let manifest = fs::read_to_string(dir.path().join("corpus/manifest.csv")).unwrap();
    let target = manifest.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_ok(&revsim(
        &[
            "sweep", "--config", &cfg, "--target", target, "--n-per-group", "1", "--svg",
        ],
        dir.path(),
    ));
    let sweep = fs::read_to_string(dir.path().join("out/sweep_esr.csv")).unwrap();
    let mut lines = sweep.lines();
    assert_eq!(lines.next().unwrap(), "delta,median,std,n");
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], "0");
        assert_eq!(cols[3], "1");
    }
    assert!(dir.path().join("out/sweep.svg").exists());
}

#[test]
fn preprocess_emits_trimmed_corpus_and_report() {
    let dir = tempfile::tempdir().unwrap();
    synth_small(dir.path(), "corpus", "2", "2", "1");
    let cfg = write_config(dir.path(), "run.toml", "corpus/manifest.csv", "\"esr\"", "pre");
    assert_ok(&revsim(&["preprocess", "--config", &cfg], dir.path()));

    let report = fs::read_to_string(dir.path().join("pre/onsets.csv")).unwrap();
    assert!(report.starts_with("id,onset_sample,trim_start,trimmed_len,sample_rate"));
    assert_eq!(report.lines().count(), 5);
    let trimmed: Vec<_> = fs::read_dir(dir.path().join("pre/trimmed"))
        .unwrap()
        .collect();
    assert_eq!(trimmed.len(), 4);
    // The trimmed manifest points at the trimmed files and still loads.
    let trimmed_manifest = dir.path().join("pre/manifest_trimmed.csv");
    let entries = revsim_core::dataset::load_manifest_resolved(&trimmed_manifest).unwrap();
    assert_eq!(entries.len(), 4);
    assert!(Path::new(&entries[0].path).exists());
}
