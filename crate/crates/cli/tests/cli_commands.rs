use std::path::Path;
use std::process::Command;

use plasmosense_cli::commands::{self, Options, Verb};
use plasmosense_cli::config::load;
use plasmosense_cli::schema::{validate_output, Metadata, SenseSummary};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plasmosense"))
}

fn run_in(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = bin().args(args).arg("--out").arg(dir).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let h = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect();
    (h, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (h, rows) = table(text);
    let j = h.iter().position(|c| c == name).unwrap();
    rows.iter().map(|r| r[j].parse().unwrap()).collect()
}

fn outputs(cfg_text: Option<&str>, preset: Option<&str>, verb: Verb, opts: &Options) -> Vec<(String, String)> {
    let mut cfg = load(cfg_text, preset).unwrap();
    commands::apply_options(&mut cfg, opts).unwrap();
    commands::run(&cfg, verb, opts).unwrap().into_iter().map(|o| (o.name, o.contents)).collect()
}

fn file<'a>(files: &'a [(String, String)], name: &str) -> &'a str {
    &files.iter().find(|(n, _)| n == name).unwrap().1
}

#[test]
fn modes_table_resonances() {
    let silver = outputs(None, Some("silver-iso"), Verb::Modes, &Options::default());
    let r = column(file(&silver, "modes.csv"), "omega_n_over_omega_p");
    assert_eq!(r.len(), 4);
    assert!((r[0] - 0.5f64.sqrt() / 2.0).abs() < 1e-6);
    assert!((r[0] - 0.353553).abs() < 1e-6);

    // ν = √(2·0.01 + 1/4) − 1/2, ε∞ and ω_p scaled by ν and √ν
    let nu = (0.27f64).sqrt() - 0.5;
    let oracle = nu.sqrt() / (6.0 * nu + 2.0).sqrt();
    let aniso = outputs(None, Some("aniso-AR0.01"), Verb::Modes, &Options::default());
    let r = column(file(&aniso, "modes.csv"), "omega_n_over_omega_p");
    assert!((r[0] - oracle).abs() < 1e-12);
    assert!((r[0] - 0.0962422).abs() < 1e-6);
}

#[test]
fn empty_mode_range_is_rejected() {
    let e = load(Some("[modes]\nn_max = 0\n"), Some("silver-iso")).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(e.to_string().contains("modes.n_max"));
}

#[test]
fn coupling_spectra_peak_at_the_resonances() {
    for preset in ["silver-iso", "aniso-AR0.01"] {
        let files = outputs(None, Some(preset), Verb::Spectrum, &Options::default());
        let modes = outputs(None, Some(preset), Verb::Modes, &Options::default());
        let text = file(&files, "coupling.csv");
        let w = column(text, "omega_rad_s");
        let step = w[1] - w[0];
        let omega_n = column(file(&modes, "modes.csv"), "omega_n");
        for (k, wn) in omega_n.iter().enumerate() {
            let kn = column(text, &format!("K_{}", k + 1));
            assert!(kn.iter().all(|&v| v >= 0.0));
            let imax = (0..kn.len()).max_by(|&a, &b| kn[a].total_cmp(&kn[b])).unwrap();
            assert!((w[imax] - wn).abs() <= step, "{preset} n={}", k + 1);
        }
    }
}

#[test]
fn bare_cavity_transmission() {
    let cfg = "[drive]\npump_rate = { value = 0, units = \"rad/s\" }\nprobe_rate = { value = 1, units = \"Grad/s\" }\n";
    let files = outputs(Some(cfg), Some("aniso-AR0.01"), Verb::Transmission, &Options::default());
    let text = file(&files, "transmission_n1.csv");
    let c = load(Some(cfg), Some("aniso-AR0.01")).unwrap();
    let m = plasmosense::PlasmonMode::new(&c.scenario.material, &c.scenario.geometry, &c.scenario.mech, 1).unwrap();
    let big = c.scenario.mech.omega_m;
    let (re, im) = (column(text, "re_t"), column(text, "im_t"));
    for (i, d) in column(text, "delta_rad_s").iter().enumerate() {
        let t = num_t(m.kappa, big, *d);
        assert!(((re[i] - t.0).powi(2) + (im[i] - t.1).powi(2)).sqrt() <= 1e-8 * (t.0.hypot(t.1)));
    }
}

/// `1 − 2κ/(κ + i(Δ − δ))` as (re, im).
fn num_t(kappa: f64, big: f64, d: f64) -> (f64, f64) {
    let (a, b) = (kappa, big - d);
    let den = a * a + b * b;
    (1.0 - 2.0 * kappa * a / den, 2.0 * kappa * b / den)
}

#[test]
fn metadata_records_assumed_values() {
    let files = outputs(None, Some("aniso-AR0.002"), Verb::Transmission, &Options { figure_axes: true, mode: Some(3) });
    let meta: Metadata = serde_json::from_str(file(&files, "transmission.meta.json")).unwrap();
    assert_eq!(meta.conventions.enhancement.source, "default");
    assert_eq!(meta.conventions.enhancement.value, 10.0);
    assert!(meta.conventions.pump_detuning.as_ref().unwrap().source.starts_with("default"));
    assert!(meta.conventions.transmission_rate.contains("|t|^2"));
    assert!(meta.conventions.figure_axis.is_some());
    assert_eq!(meta.outputs, vec!["transmission_n3.csv".to_string()]);
    let (h, _) = table(file(&files, "transmission_n3.csv"));
    assert_eq!(h.last().unwrap(), "delta_fig_rad_s");
}

#[test]
fn synthetic_lorentzian_mass_resolution() {
    // wide window so the Lorentzian tails do not lift the baseline
    let cfg = "[sense]\nsynthetic_width = { value = 1.9, units = \"Grad/s\" }\n\
               [drive.grid]\nstart = { value = -8000, units = \"Grad/s\" }\n\
               stop = { value = 8000, units = \"Grad/s\" }\npoints = 400001\n";
    let files = outputs(Some(cfg), Some("aniso-AR0.002"), Verb::Sense, &Options::default());
    let s: SenseSummary = serde_json::from_str(file(&files, "sense.json")).unwrap();
    let want = 2.0 * 3e-22 * 1.9e9 / 470e9;
    assert!((s.modes[0].delta_m - want).abs() <= 1e-6 * want);
    assert_eq!(s.modes[0].fwhm_source, "synthetic");
}

#[test]
fn forced_width_reproduces_mass_formula() {
    let cfg = "[sense]\nfwhm_override = { value = 0.18, units = \"Grad/s\" }\n";
    let files = outputs(Some(cfg), Some("aniso-AR0.002"), Verb::Sense, &Options::default());
    let s: SenseSummary = serde_json::from_str(file(&files, "sense.json")).unwrap();
    let m = &s.modes[0];
    assert!((m.delta_m - 2.297_872_340_425_532e-25).abs() < 1e-12 * 2.3e-25);
    assert!(m.mass_check.paper_discrepancy);
    assert_eq!(m.mass_check.published, 1.2e-24);
    assert!(s.casimir.check.paper_discrepancy);
}

#[test]
fn every_output_revalidates() {
    let sweep = "[sweep]\naxis = \"r_m\"\nvalues = [12, 14, 16]\nunits = \"nm\"\n";
    for verb in [Verb::Modes, Verb::Spectrum, Verb::Transmission, Verb::Sense, Verb::Sweep] {
        for (name, text) in outputs(Some(sweep), Some("aniso-AR0.01"), verb, &Options::default()) {
            validate_output(&name, &text).unwrap();
        }
    }
    assert!(validate_output("modes.csv", "n,omega\n1,2\n").is_err());
    assert!(validate_output("sense.json", "{\"modes\": []}").is_err());
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_in(dir.path(), &["modes", "--preset", "silver-iso"]);
    assert_eq!(code, 0);
    assert!(dir.path().join("modes.csv").exists());
    assert!(dir.path().join("modes.meta.json").exists());

    let cfg = dir.path().join("no_mass.toml");
    std::fs::write(
        &cfg,
        "[material]\neps_inf = 6\nomega_p = { value = 1.9, units = \"PHz\" }\ngamma_p = { value = 12, units = \"THz\" }\n\
         ar_inf = 1\n[geometry]\nradius = { value = 10, units = \"nm\" }\nr_m = { value = 14, units = \"nm\" }\n\
         [mechanics]\nomega_m = { value = 470, units = \"GHz\" }\ngamma_m = { value = 1.9, units = \"GHz\" }\n\
         raman_squared = { value = 1e3, units = \"A^4/amu\" }\n[drive]\npump_intensity = { value = 400, units = \"kW/cm^2\" }\n\
         probe_intensity = { value = 1, units = \"kW/cm^2\" }\n",
    )
    .unwrap();
    let (code, err) = run_in(dir.path(), &["sense", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("mechanics.mass"), "{err}");

    let wing = dir.path().join("wing.toml");
    std::fs::write(
        &wing,
        "preset = \"aniso-AR0.01\"\n[sense.window]\nstart = { value = -490, units = \"Grad/s\" }\n\
         stop = { value = -480, units = \"Grad/s\" }\n",
    )
    .unwrap();
    let (code, _) = run_in(dir.path(), &["sense", "--config", wing.to_str().unwrap()]);
    assert_eq!(code, 3);

    let (code, _) = run_in(dir.path(), &["modes", "--config", dir.path().join("absent.toml").to_str().unwrap()]);
    assert_eq!(code, 1);
    let (code, _) = run_in(dir.path(), &["modes"]);
    assert_eq!(code, 2);
}

#[test]
fn identical_runs_are_bit_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for verb in ["modes", "spectrum", "transmission", "sense"] {
        assert_eq!(run_in(a.path(), &[verb, "--preset", "aniso-AR0.002"]).0, 0);
        assert_eq!(run_in(b.path(), &[verb, "--preset", "aniso-AR0.002"]).0, 0);
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 8);
    for n in names {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap());
    }
}
