use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use imoments::bench::{
    gen_shapes, knn_classify, knn_standardized, rect_tables, recon_sweep, smooth_test_image, stratified_split,
    LabeledFeatures, ShapeClass, DEFAULT_SEED,
};
use imoments::engine::{
    disk_moments, disk_reconstruct, polar_transform, rect_moments, rect_reconstruct, rev_polar, MomentKind, MomentSet,
    PolarUnwrap,
};
use imoments::geometry::{centroid_or_frame_center, polar_xy};
use imoments::io::{format_moments, load_image, load_moments, save_image};
use imoments::{build_table, Centroid, GrayImage};

use crate::config::RunConfig;
use crate::error::CliError;

const DEFAULT_ORDER: usize = 10;

fn write_out(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_image(path: &Path) -> Result<GrayImage, CliError> {
    load_image(path).map_err(|e| match e {
        imoments::MomentError::Io(io) => CliError::runtime(format!("{}: {io}", path.display())),
        other => other.into(),
    })
}

fn center_for(img: &GrayImage, rc: &RunConfig) -> Centroid {
    rc.center.unwrap_or_else(|| {
        let (c, fallback) = centroid_or_frame_center(img);
        if fallback {
            eprintln!("warning: image has no mass, using the frame center");
        }
        c
    })
}

pub fn compute_moments(img: &GrayImage, rc: &RunConfig) -> Result<MomentSet, CliError> {
    let (w, h) = img.dims();
    match rc.kind {
        MomentKind::Rect { .. } => {
            let (tx, ty) = rect_tables(rc.kind, w, h, rc.rect_order(DEFAULT_ORDER), &rc.params)?;
            Ok(MomentSet::Rect(rect_moments(img, &tx, &ty)?))
        }
        MomentKind::Disk(family) => {
            let pm = polar_xy(w, h, center_for(img, rc));
            Ok(MomentSet::Disk(disk_moments(img, &pm, family, rc.disk_order(DEFAULT_ORDER), &rc.params)?))
        }
    }
}

pub fn moments(input: &Path, output: Option<&Path>, rc: &RunConfig) -> Result<(), CliError> {
    let img = read_image(input)?;
    write_out(output, &format_moments(&compute_moments(&img, rc)?))
}

pub fn invariants(input: &Path, output: Option<&Path>, rc: &RunConfig) -> Result<(), CliError> {
    let img = read_image(input)?;
    let m = compute_moments(&img, rc)?;
    let mut out = String::new();
    match &m {
        MomentSet::Disk(d) => {
            out.push_str("p,lambda,magnitude\n");
            let v = m.feature_vector();
            let mut i = 0;
            for p in 0..=d.order() {
                for l in 0..=p {
                    let _ = writeln!(out, "{p},{l},{:.16e}", v[i]);
                    i += 1;
                }
            }
        }
        MomentSet::Rect(r) => {
            out.push_str("p,q,value\n");
            for ((p, q), v) in r.values.indexed_iter() {
                let _ = writeln!(out, "{p},{q},{v:.16e}");
            }
        }
    }
    write_out(output, &out)
}

pub fn reconstruct(input: &Path, output: &Path, order: Option<(usize, Option<usize>)>) -> Result<(), CliError> {
    let m = load_moments(input).map_err(|e| match e {
        imoments::MomentError::Io(io) => CliError::runtime(format!("{}: {io}", input.display())),
        other => CliError::runtime(format!("{}: {other}", input.display())),
    })?;
    let img = match &m {
        MomentSet::Rect(r) => {
            let avail = r.orders();
            let up_to = order.map_or(avail, |(p, q)| (p, q.unwrap_or(p)));
            let kind = MomentKind::Rect { x: r.family_x, y: r.family_y };
            let (tx, ty) = rect_tables(kind, r.width, r.height, avail, &r.params)?;
            rect_reconstruct(r, &tx, &ty, up_to)?
        }
        MomentSet::Disk(d) => {
            if let Some((_, Some(_))) = order {
                return Err(CliError::usage("disk moment files take a single order P"));
            }
            let up_to = order.map_or(d.order(), |(p, _)| p);
            let pm = polar_xy(d.width, d.height, d.center);
            disk_reconstruct(d, &pm, up_to)?.image
        }
    };
    save_image(&img, output)?;
    Ok(())
}

fn meta_path(image: &Path) -> PathBuf {
    let mut s = image.as_os_str().to_owned();
    s.push(".polar");
    PathBuf::from(s)
}

pub fn polar(input: &Path, output: &Path, rc: &RunConfig) -> Result<(), CliError> {
    let img = read_image(input)?;
    let pu = polar_transform(&img, rc.resolution, center_for(&img, rc))?;
    let grid = pu.as_image()?;
    save_image(&grid, output)?;
    let (lo, hi) = grid.min_max();
    let meta = format!(
        "width={}\nheight={}\ncx={}\ncy={}\ntheta0={}\nresolution={}\nmin={lo}\nmax={hi}\n",
        img.width(),
        img.height(),
        pu.center.xbar,
        pu.center.ybar,
        pu.theta0,
        pu.resolution
    );
    fs::write(meta_path(output), meta)?;
    Ok(())
}

pub fn unpolar(input: &Path, output: &Path, meta: Option<&Path>) -> Result<(), CliError> {
    let meta_file = meta.map_or_else(|| meta_path(input), Path::to_path_buf);
    let text = fs::read_to_string(&meta_file)
        .map_err(|e| CliError::runtime(format!("{}: {e}", meta_file.display())))?;
    let kv: BTreeMap<&str, &str> = text.lines().filter_map(|l| l.split_once('=')).collect();
    let get = |k: &str| -> Result<f64, CliError> {
        kv.get(k)
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| CliError::runtime(format!("{}: missing or invalid '{k}'", meta_file.display())))
    };
    let grid = read_image(input)?;
    let (lo, hi) = (get("min")?, get("max")?);
    let restored = grid.map(|v| lo + v / 255.0 * (hi - lo));
    let resolution = get("resolution")? as usize;
    let radii_count = grid.height();
    if resolution == 0 || grid.width() != radii_count * resolution {
        return Err(CliError::runtime(format!(
            "polar image is {}x{}, expected width = height x {resolution}",
            grid.width(),
            grid.height()
        )));
    }
    let pu = PolarUnwrap {
        resolution,
        radii_count,
        grid: restored.into_array(),
        theta0: get("theta0")?,
        center: Centroid::new(get("cx")?, get("cy")?),
    };
    let img = rev_polar(get("width")? as usize, get("height")? as usize, &pu);
    save_image(&img, output)?;
    Ok(())
}

pub fn bench(
    input: Option<&Path>,
    orders: &[usize],
    size: usize,
    seed: Option<u64>,
    output: Option<&Path>,
    rc: &RunConfig,
) -> Result<(), CliError> {
    let (id, img) = match input {
        Some(p) => (p.display().to_string(), read_image(p)?),
        None => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            (format!("synthetic-{size}-{seed}"), smooth_test_image(size, seed))
        }
    };
    let report = recon_sweep(&id, &img, rc.kind, &rc.params, orders)?;
    write_out(output, &report.to_csv())
}

/// Images under `dir/<class>/`, sorted by class then file name.
fn labeled_images(dir: &Path) -> Result<Vec<(String, PathBuf)>, CliError> {
    let mut out = Vec::new();
    let mut classes: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::runtime(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    classes.sort();
    for class_dir in classes {
        let class = class_dir.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut files: Vec<PathBuf> = fs::read_dir(&class_dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
                matches!(ext.as_str(), "png" | "bmp" | "pgm")
            })
            .collect();
        files.sort();
        out.extend(files.into_iter().map(|f| (class.clone(), f)));
    }
    if out.is_empty() {
        return Err(CliError::runtime(format!("{}: no class subdirectories with images", dir.display())));
    }
    Ok(out)
}

fn features(items: &[(String, PathBuf)], rc: &RunConfig) -> Result<Vec<Vec<f64>>, CliError> {
    items.iter().map(|(_, p)| Ok(compute_moments(&read_image(p)?, rc)?.feature_vector())).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn classify(
    train_dir: &Path,
    test_dir: &Path,
    k: usize,
    raw: bool,
    output: Option<&Path>,
    rc: &RunConfig,
) -> Result<(), CliError> {
    let train_items = labeled_images(train_dir)?;
    let test_items = labeled_images(test_dir)?;
    let mut names: Vec<String> = train_items.iter().map(|(c, _)| c.clone()).collect();
    names.dedup();
    let label_of = |c: &str| names.iter().position(|n| n == c);
    let labels: Vec<usize> = train_items.iter().map(|(c, _)| label_of(c).expect("known class")).collect();
    let train = LabeledFeatures::new(features(&train_items, rc)?, labels)?;
    let test_rows = features(&test_items, rc)?;
    let pred = if raw { knn_classify(&train, &test_rows, k)? } else { knn_standardized(&train, &test_rows, k)? };
    let mut out = String::from("path,true,pred\n");
    let mut correct = 0;
    for ((class, path), p) in test_items.iter().zip(&pred) {
        if label_of(class) == Some(*p) {
            correct += 1;
        }
        let _ = writeln!(out, "{},{class},{}", path.display(), names[*p]);
    }
    let _ = writeln!(out, "accuracy={}", correct as f64 / pred.len() as f64);
    write_out(output, &out)
}

pub fn tables(size: usize, output: Option<&Path>, rc: &RunConfig) -> Result<(), CliError> {
    let MomentKind::Rect { x, y } = rc.kind else {
        return Err(CliError::usage("tables needs a rectangular family"));
    };
    if x != y {
        return Err(CliError::usage("tables takes a single family"));
    }
    let (order, _) = rc.rect_order(DEFAULT_ORDER.min(size.saturating_sub(1)));
    let table = build_table(x, size, order, &rc.params)?;
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    write_out(output, &String::from_utf8_lossy(&buf))
}

pub fn shapes(out: &Path, per_class: usize, size: usize, seed: u64, train_per_class: Option<usize>) -> Result<(), CliError> {
    let ds = gen_shapes(per_class, &ShapeClass::ALL, size, seed)?;
    let split = train_per_class.map(|n| stratified_split(&ds.labels, n, seed)).transpose()?;
    for (i, (img, &label)) in ds.images.iter().zip(&ds.labels).enumerate() {
        let class = ds.classes[label].name();
        let mut dir = out.to_path_buf();
        if let Some(s) = &split {
            dir.push(if s.train[i] { "train" } else { "test" });
        }
        dir.push(class);
        fs::create_dir_all(&dir)?;
        save_image(img, dir.join(format!("{class}_{i:03}.png")))?;
    }
    Ok(())
}
