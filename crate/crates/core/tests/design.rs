use diffset::design::*;
use diffset::group::{annihilator, AbelianGroup, GroupElement, Presentation, Subgroup};
use diffset::number::QuadInt;
use diffset::search::{find_three_valued, EnumSpec};
use diffset::Error;
use num_bigint::BigInt;

#[test]
fn instance_lines_round_trip() {
    let text = "# two instances\ngroup=7; set=1;2;4\n\ngroup=4,4; set=0,1;1,0;1,1;1,2;2,3;3,1\n";
    let all = parse_instances(text).unwrap();
    assert_eq!(all.len(), 2);
    for d in &all {
        assert_eq!(parse_instance(&format_instance(d)).unwrap(), *d);
        assert!(verify_difference_set(d).is_ds);
    }
    assert!(matches!(parse_instance("set=1;2"), Err(Error::Parse(_))));
    assert!(parse_instance("group=7; set=9").is_err());
}

#[test]
fn written_factors_map_to_invariant_form() {
    let pres = Presentation::parse("2,3").unwrap();
    assert_eq!(pres.group().factors(), &[6]);
    let g = pres.map(&GroupElement::parse("1,1").unwrap()).unwrap();
    assert_eq!(pres.group().element_order(&g), 6);
    assert!(pres.map(&GroupElement::parse("2,0").unwrap()).is_err());
}

#[test]
fn ring_operations_reject_bad_input() {
    let a = GroupRingElement::from_indices(&AbelianGroup::cyclic(7).unwrap(), &[1, 2, 4]);
    let b = GroupRingElement::from_indices(&AbelianGroup::cyclic(5).unwrap(), &[1]);
    assert_eq!(a.ring_mul(&b), Err(Error::GroupMismatch));
    assert!(matches!(a.multiplier_image(7), Err(Error::InvalidAutomorphism { .. })));
    let dd = a.ring_mul(&a.involution()).unwrap();
    // D D^(-1) = 2 + G for the (7,3,1) set.
    assert_eq!(dd.coeff(0), &BigInt::from(3));
    assert!((1..7).all(|i| dd.coeff(i) == &BigInt::from(1)));
}

#[test]
fn two_valued_sets_have_no_profile() {
    let d = GroupRingElement::from_indices(&AbelianGroup::cyclic(7).unwrap(), &[1, 2, 4]);
    let sp = spectrum(&d).unwrap();
    assert_eq!(sp.size(), 2);
    assert!(sp.three_valued.is_none());
    assert!(matches!(concrete_profile(&d), Err(Error::NotApplicable(_))));
}

#[test]
fn abstract_profile_matches_instance() {
    let g = AbelianGroup::new(&[4, 4]).unwrap();
    let inst = &find_three_valued(&EnumSpec::new(g, 6, 2)).unwrap()[0];
    let (comp, _) = inst.normalized.as_ref().unwrap();
    let cp = concrete_profile(comp).unwrap();
    let a = QuadInt::from_ints(-1, 0, 2).unwrap();
    let p = three_value_profile(&ProfileParams::new(16, 10, 4, a, cp.profile.d1)).unwrap();
    assert_eq!(p, cp.profile);
    assert!(cp.all_rows_match());
    let sizes: Vec<usize> = cp.e_sets.iter().map(Vec::len).collect();
    let want: Vec<usize> = p.e_sizes.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
    assert_eq!(sizes, want);
}

#[test]
fn inconsistent_profile_parameters() {
    let a = QuadInt::from_ints(-1, 0, 2).unwrap();
    assert!(matches!(three_value_profile(&ProfileParams::new(16, 10, 5, a.clone(), 1)), Err(Error::MalformedParameters(_))));
    assert!(three_value_profile(&ProfileParams::new(17, 10, 4, a, 1)).is_err());
}

#[test]
fn annihilator_of_order_two_subgroup() {
    let g = AbelianGroup::cyclic(4).unwrap();
    let h = Subgroup::from_elements(&g, &[0, 2]).unwrap();
    let perp = annihilator(&h);
    let mut els = perp.elements().to_vec();
    els.sort();
    assert_eq!(els, [0, 2]);
}

#[test]
fn small_fusion_scheme() {
    let d = GroupRingElement::from_indices(&AbelianGroup::cyclic(4).unwrap(), &[0, 1, 2]);
    let cp = concrete_profile(&d).unwrap();
    match fusion_scheme(&cp.profile, Some(&d)) {
        Ok(f) => {
            assert!(f.eigenmatrix.det_agrees);
            assert_eq!(f.axioms_hold, Some(true));
        }
        Err(e) => assert!(matches!(e, Error::NotApplicable(_))),
    }
}
