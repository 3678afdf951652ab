use n2sv_core::fusion::{all_ns_sectors, all_sectors, fuse, fuse_ns, fuse_vectors};
use n2sv_core::{CosetSector, FusionVector, NSFermiSector};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (u32, usize, usize, usize)> {
    (1u32..=6, any::<usize>(), any::<usize>(), any::<usize>())
}

fn pick<T: Clone>(xs: &[T], i: usize) -> T {
    xs[i % xs.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn coset_ring_axioms((n, i, j, k) in triple()) {
        let all = all_sectors(n);
        let (a, b, c) = (pick(&all, i), pick(&all, j), pick(&all, k));
        prop_assert_eq!(fuse(&a, &b).unwrap(), fuse(&b, &a).unwrap());
        prop_assert_eq!(fuse(&CosetSector::identity(n), &a).unwrap(), FusionVector::from_sector(a));
        let ab_c = fuse_vectors(&fuse(&a, &b).unwrap(), &FusionVector::from_sector(c), fuse).unwrap();
        let a_bc = fuse_vectors(&FusionVector::from_sector(a), &fuse(&b, &c).unwrap(), fuse).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        // the identity appears in a x b exactly when b is the conjugate of a
        let unit = fuse(&a, &b).unwrap().multiplicity(&CosetSector::identity(n));
        prop_assert_eq!(unit, u64::from(b == a.conjugate()));
    }

    #[test]
    fn ns_ring_axioms((n, i, j, k) in triple()) {
        let all = all_ns_sectors(n);
        let (a, b, c) = (pick(&all, i), pick(&all, j), pick(&all, k));
        prop_assert_eq!(fuse_ns(&a, &b).unwrap(), fuse_ns(&b, &a).unwrap());
        prop_assert_eq!(fuse_ns(&NSFermiSector::identity(n), &a).unwrap(), FusionVector::from_sector(a));
        let ab_c = fuse_vectors(&fuse_ns(&a, &b).unwrap(), &FusionVector::from_sector(c), fuse_ns).unwrap();
        let a_bc = fuse_vectors(&FusionVector::from_sector(a), &fuse_ns(&b, &c).unwrap(), fuse_ns).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn dim_one_sectors_fuse_simply((n, i, j, _k) in triple()) {
        let ones: Vec<_> = all_sectors(n).into_iter().filter(CosetSector::is_dim_one).collect();
        let (a, b) = (pick(&ones, i), pick(&ones, j));
        let prod = fuse(&a, &b).unwrap();
        prop_assert_eq!(prod.total(), 1);
        let c = prod.single().unwrap();
        prop_assert!(c.is_dim_one());
        let conj = fuse(&a.conjugate(), &b.conjugate()).unwrap().single().unwrap();
        prop_assert_eq!(conj, c.conjugate());
    }
}

#[test]
fn sector_counts() {
    for n in 1..=8u32 {
        // (l, m, s) with l + m + s even, modulo the field identification
        let expected = (n as usize + 1) * (2 * n as usize + 4);
        assert_eq!(all_sectors(n).len(), expected, "n = {n}");
    }
}
