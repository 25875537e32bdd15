use std::path::Path;
use std::process::{Command, Output};

use imoments::bench::smooth_test_image;
use imoments::io::{load_image, load_moments, save_image};
use imoments::engine::MomentSet;
use imoments::RectFamily;

fn imoments(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imoments"))
        .current_dir(dir)
        .env_remove("IM_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn planet(dir: &Path, size: usize) {
    save_image(&smooth_test_image(size, 3), dir.join("in.png")).unwrap();
}

#[test]
fn moments_then_reconstruct() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 32);
    let o = imoments(t.path(), &["moments", "--type", "cheby", "--order", "5x5", "in.png", "-o", "m.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = imoments(t.path(), &["reconstruct", "m.csv", "--order", "5x5", "-o", "out.png"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(load_image(t.path().join("out.png")).unwrap().dims(), (32, 32));
}

#[test]
fn full_order_reconstruction_matches_input() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 16);
    let o = imoments(t.path(), &["--type", "cheby", "--order", "15", "moments", "in.png", "-o", "m.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = imoments(t.path(), &["reconstruct", "m.csv", "-o", "out.png"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let a = load_image(t.path().join("in.png")).unwrap();
    let b = load_image(t.path().join("out.png")).unwrap();
    let (lo, hi) = a.min_max();
    let worst = a.as_array().iter().zip(b.as_array()).map(|(x, y)| ((x - lo) / (hi - lo) * 255.0 - y).abs()).fold(0.0, f64::max);
    assert!(worst <= 1.0, "max deviation {worst}");
}

#[test]
fn bivariate_families_with_alpha() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 24);
    let o = imoments(t.path(), &["moments", "--type", "legend,gegen", "--alpha", "2", "--order", "10x10", "in.png", "-o", "m.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let MomentSet::Rect(r) = load_moments(t.path().join("m.csv")).unwrap() else { panic!("expected rect moments") };
    assert_eq!((r.family_x, r.family_y), (RectFamily::Legendre, RectFamily::Gegenbauer));
    assert_eq!(r.params.gegenbauer_alpha, 2.0);
    assert_eq!(r.orders(), (10, 10));
}

#[test]
fn mixed_family_classes_are_a_usage_error() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 16);
    let o = imoments(t.path(), &["moments", "--type", "cheby,gpzm", "in.png"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot combine"), "{}", stderr(&o));
    let o = imoments(t.path(), &["moments", "--type", "cheby,legend", "in.png"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_one() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 16);
    for args in [
        &["frobnicate"][..],
        &["moments", "--type", "krawt", "--alpha", "1.5", "in.png"],
        &["moments", "--type", "gpzm", "--order", "4x4", "in.png"],
        &["moments", "--order", "40", "in.png"],
        &["moments", "--threads", "0", "in.png"],
    ] {
        assert_eq!(imoments(t.path(), args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn missing_or_corrupt_input_exits_two() {
    let t = tempfile::tempdir().unwrap();
    assert_eq!(imoments(t.path(), &["moments", "absent.png"]).status.code(), Some(2));
    std::fs::write(t.path().join("junk.png"), b"not an image").unwrap();
    assert_eq!(imoments(t.path(), &["moments", "junk.png"]).status.code(), Some(2));
    std::fs::write(t.path().join("junk.csv"), b"# imoments moment file\nrubbish\n").unwrap();
    assert_eq!(imoments(t.path(), &["reconstruct", "junk.csv", "-o", "x.png"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 16);
    std::fs::write(t.path().join("im.conf"), "# defaults\ntype = legend\norder = 4x6\n").unwrap();
    let o = imoments(t.path(), &["--config", "im.conf", "moments", "in.png", "-o", "a.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let MomentSet::Rect(r) = load_moments(t.path().join("a.csv")).unwrap() else { panic!() };
    assert_eq!((r.family_x, r.orders()), (RectFamily::Legendre, (4, 6)));
    let o = imoments(t.path(), &["--config", "im.conf", "--order", "3", "moments", "in.png", "-o", "b.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let MomentSet::Rect(r) = load_moments(t.path().join("b.csv")).unwrap() else { panic!() };
    assert_eq!(r.orders(), (3, 3));
    std::fs::write(t.path().join("bad.conf"), "colour = red\n").unwrap();
    assert_eq!(imoments(t.path(), &["--config", "bad.conf", "moments", "in.png"]).status.code(), Some(1));
}

#[test]
fn disk_invariants_and_reconstruction() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 32);
    let o = imoments(t.path(), &["--type", "gpzm", "--order", "6", "invariants", "in.png"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("p,lambda,magnitude"));
    assert_eq!(text.lines().count(), 1 + 7 * 8 / 2);
    let o = imoments(t.path(), &["--type", "fm", "--order", "5", "moments", "in.png", "-o", "d.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = imoments(t.path(), &["reconstruct", "d.csv", "--order", "3", "-o", "d.pgm"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(load_image(t.path().join("d.pgm")).unwrap().dims(), (32, 32));
}

#[test]
fn polar_round_trip_through_files() {
    let t = tempfile::tempdir().unwrap();
    planet(t.path(), 32);
    let o = imoments(t.path(), &["polar", "--resolution", "40", "in.png", "-o", "p.png"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(t.path().join("p.png.polar").exists());
    let o = imoments(t.path(), &["unpolar", "p.png", "-o", "u.png"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(load_image(t.path().join("u.png")).unwrap().dims(), (32, 32));
    assert_eq!(imoments(t.path(), &["unpolar", "in.png", "-o", "v.png"]).status.code(), Some(2));
}

#[test]
fn shapes_then_classify() {
    let t = tempfile::tempdir().unwrap();
    let o = imoments(t.path(), &["shapes", "--out", "ds", "--per-class", "8", "--size", "48", "--train-per-class", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for class in ["disk", "square", "triangle", "ring"] {
        assert_eq!(std::fs::read_dir(t.path().join("ds/train").join(class)).unwrap().count(), 5);
        assert_eq!(std::fs::read_dir(t.path().join("ds/test").join(class)).unwrap().count(), 3);
    }
    let o = imoments(t.path(), &["--order", "8", "classify", "--train", "ds/train", "--test", "ds/test", "-o", "c.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(t.path().join("c.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 12 + 1);
    let acc: f64 = text.lines().last().unwrap().strip_prefix("accuracy=").unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&acc));
}

#[test]
fn tables_and_bench_emit_csv() {
    let t = tempfile::tempdir().unwrap();
    let o = imoments(t.path(), &["--type", "krawt", "--order", "3", "tables", "-n", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!o.stdout.is_empty());
    let o = imoments(t.path(), &["bench", "--size", "32", "--orders", "4,8", "--threads", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("family,params,order,psnr_db"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn help_exits_zero() {
    let t = tempfile::tempdir().unwrap();
    let o = imoments(t.path(), &["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("reconstruct"));
}
