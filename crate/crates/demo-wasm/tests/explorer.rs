use imoments_wasm::{curves, Explorer};

#[test]
fn full_order_rebuild_is_exact() {
    let e = Explorer::new(16).unwrap();
    let p = e.reconstruct("cheby", 15, None).unwrap();
    assert_eq!((p.width(), p.height()), (16, 16));
    assert!(p.psnr().is_infinite() || p.psnr() > 100.0, "psnr {}", p.psnr());
    assert_eq!(p.pixels(), e.source().pixels());
}

#[test]
fn truncation_lowers_psnr() {
    let e = Explorer::new(64).unwrap();
    let lo = e.reconstruct("legend", 5, None).unwrap().psnr();
    let hi = e.reconstruct("legend", 30, None).unwrap().psnr();
    assert!(lo < hi, "{lo} vs {hi}");
    assert!(e.reconstruct("gpzm", 10, Some(0.5)).unwrap().psnr().is_finite());
    assert!(e.reconstruct("krawt,cheby", 10, Some(0.3)).is_ok());
}

#[test]
fn errors_are_messages() {
    let e = Explorer::new(16).unwrap();
    assert!(e.reconstruct("cheby,gpzm", 4, None).unwrap_err().contains("cannot combine"));
    assert!(e.reconstruct("krawt", 4, Some(2.0)).is_err());
    assert!(e.reconstruct("cheby", 40, None).is_err());
    assert!(Explorer::new(4).is_err());
    assert!(curves("gpzm", 8, 3, None).is_err());
}

#[test]
fn curves_are_orthonormal_rows() {
    let n = 12;
    let v = curves("cheby", n, 4, None).unwrap();
    assert_eq!(v.len(), 4 * n);
    for a in 0..4 {
        for b in 0..4 {
            let dot: f64 = (0..n).map(|i| v[a * n + i] * v[b * n + i]).sum();
            assert!((dot - f64::from(u8::from(a == b))).abs() < 1e-10);
        }
    }
}

#[test]
fn polar_and_rgba_loading() {
    let mut e = Explorer::new(16).unwrap();
    let data: Vec<u8> = (0..8 * 6).flat_map(|i| [i as u8 * 5, 0, 0, 255]).collect();
    e.load_rgba(8, 6, &data).unwrap();
    assert_eq!((e.source().width(), e.source().height()), (8, 6));
    let p = e.polar(10).unwrap();
    assert_eq!(p.width(), 10 * p.height());
    assert_eq!(p.pixels().len(), p.width() * p.height() * 4);
    assert!(e.load_rgba(8, 6, &data[4..]).is_err());
    assert!(e.polar(0).is_err());
}
