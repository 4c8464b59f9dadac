use jtheta::cache::{Cache, CacheEvent};
use jtheta::polyfile::{self, checksum, PolyFile, PolyFileError};
use jtheta_core::modpoly::{fit_P, fit_Q, FitOptions, PolyKind, PolySource};
use std::fs;

#[test]
fn round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    for p in [fit_P(3, FitOptions::default()).unwrap(), fit_Q(6, FitOptions::default()).unwrap()] {
        let path = dir.path().join("poly.json");
        polyfile::save_atomic(&p, &path).unwrap();
        let bytes = fs::read(&path).unwrap();
        let back = polyfile::load(&path).unwrap();
        assert_eq!(back, p);
        let f1 = PolyFile::from_poly(&p);
        let f2 = PolyFile::from_poly(&back);
        assert_eq!(f1, f2);
        assert_eq!(f1.meta.checksum, checksum(&f2.terms));
        polyfile::save_atomic(&back, &path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), bytes);
    }
}

#[test]
fn checksum_ignores_term_order() {
    let p = fit_P(3, FitOptions::default()).unwrap();
    let mut f = PolyFile::from_poly(&p);
    let c = f.meta.checksum.clone();
    f.terms.reverse();
    assert_eq!(checksum(&f.terms), c);
    assert_eq!(f.to_poly().unwrap(), p);
}

#[test]
fn tampering_is_detected() {
    let p = fit_P(3, FitOptions::default()).unwrap();
    let mut f = PolyFile::from_poly(&p);
    f.terms[0].c = "12345".into();
    assert!(matches!(f.to_poly(), Err(PolyFileError::Checksum { .. })));
    // a consistent checksum does not rescue a wrong polynomial
    f.meta.checksum = checksum(&f.terms);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
    assert!(matches!(polyfile::load(&path), Err(PolyFileError::Invalid(_))));
}

#[test]
fn cache_discards_and_refits() {
    let dir = tempfile::tempdir().unwrap();
    let mut cache = Cache::new(dir.path(), FitOptions::default());
    let p = cache.poly(PolyKind::P, 3).unwrap();
    assert_eq!(cache.events, vec![CacheEvent::Miss { kind: PolyKind::P, n: 3 }]);
    let path = cache.path(PolyKind::P, 3);
    let good = fs::read(&path).unwrap();

    let mut fresh = Cache::new(dir.path(), FitOptions::default());
    assert_eq!(fresh.poly(PolyKind::P, 3).unwrap(), p);
    assert_eq!(fresh.events, vec![CacheEvent::Hit { kind: PolyKind::P, n: 3 }]);

    let mut f: PolyFile = serde_json::from_slice(&good).unwrap();
    f.terms.retain(|t| t.e != vec![0, 0]);
    f.meta.checksum = checksum(&f.terms);
    fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
    let mut again = Cache::new(dir.path(), FitOptions::default());
    assert_eq!(again.poly(PolyKind::P, 3).unwrap(), p);
    assert!(matches!(again.events[0], CacheEvent::Discarded { .. }));
    assert_eq!(fs::read(&path).unwrap(), good);

    fs::write(&path, "{ not json").unwrap();
    let mut broken = Cache::new(dir.path(), FitOptions::default());
    assert_eq!(broken.poly(PolyKind::P, 3).unwrap(), p);
    assert!(matches!(broken.events[0], CacheEvent::Discarded { .. }));
}

#[test]
fn cache_rejects_misnamed_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path(), FitOptions::default());
    let p3 = fit_P(3, FitOptions::default()).unwrap();
    polyfile::save_atomic(&p3, &cache.path(PolyKind::P, 5)).unwrap();
    assert!(matches!(cache.load(PolyKind::P, 5), Err(PolyFileError::Format(_))));
}
