use proptest::collection::{btree_map, vec};
use proptest::prelude::*;

use lagflag::diagram::{ShiftedDiagram, Step};
use lagflag::marked::{lf_ktheory, selection_all, tuples};
use lagflag::picard::{Affine, Generator, PicElement};
use lagflag::scheme::FlagDescriptor;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (0usize..6).prop_map(Generator::Delta),
        (0usize..6).prop_map(Generator::Nabla),
        (1usize..8).prop_map(Generator::DetV),
        Just(Generator::AmbientDelta),
        (1u8..=2).prop_map(Generator::BoundaryDiv),
    ]
}

fn element() -> impl Strategy<Value = PicElement> {
    btree_map(generator(), -50i64..50, 0..8).prop_map(|m| {
        m.into_iter()
            .fold(PicElement::zero(), |acc, (g, x)| acc.with(g, x))
    })
}

fn diagram() -> impl Strategy<Value = ShiftedDiagram> {
    vec(prop_oneof![Just(Step::Down), Just(Step::Left)], 1..14).prop_map(ShiftedDiagram::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn pic_group_laws(a in element(), b in element(), c in element()) {
        prop_assert!((a.clone() + -a.clone()).is_zero());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() + PicElement::zero(), a.clone());
        prop_assert_eq!(a.clone() - b.clone() + b.clone(), a);
    }

    #[test]
    fn pic_json_round_trip(a in element()) {
        let j = serde_json::to_string(&a).unwrap();
        let back: PicElement = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn affine_evaluation_is_additive(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20, n in 0i64..30) {
        let x = Affine { coeff: a, constant: b };
        let y = Affine { coeff: c, constant: d };
        prop_assert_eq!((x + y).eval(n), x.eval(n) + y.eval(n));
        prop_assert_eq!((x - y).eval(n), x.eval(n) - y.eval(n));
        prop_assert_eq!(x.to_string().parse::<Affine>().unwrap(), x);
    }

    #[test]
    fn diagram_round_trips(d in diagram()) {
        prop_assert_eq!(&ShiftedDiagram::from_tuple(&d.to_tuple()).unwrap(), &d);
        prop_assert_eq!(&d.to_string().parse::<ShiftedDiagram>().unwrap(), &d);
        let b = d.boundary();
        prop_assert_eq!(b.total_length(), d.frame_size());
        let back: ShiftedDiagram = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn ktheory_descriptor_is_regular(d in diagram()) {
        let desc = lf_ktheory(&d);
        prop_assert!(desc.is_valid());
        prop_assert!(desc.is_regular().unwrap());
        let td = tuples(&d, &selection_all(&d));
        prop_assert!(td.t.iter().all(|&x| x == 1));
        let n = d.frame_size();
        prop_assert_eq!(desc.relative_dimension().unwrap() + d.weight(), n * (n + 1) / 2);
    }

    #[test]
    fn random_descriptors_validate_consistently(
        n in 1usize..7,
        d in vec(0usize..8, 1..4),
        e in vec(0usize..8, 0..3),
        t in vec(0usize..4, 0..3),
    ) {
        let desc = FlagDescriptor::new(n, d, e, t);
        let valid = desc.is_valid();
        prop_assert_eq!(valid, desc.check().is_ok());
        if valid {
            let k = desc.k();
            prop_assert!(desc.d.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(desc.d.iter().all(|&x| x <= n));
            for i in 0..k {
                prop_assert!(desc.e[i] <= desc.d[i] && desc.t[i] >= 1 && desc.e[i] + desc.t[i] <= n);
            }
            if desc.is_gorenstein().unwrap() {
                let reg = desc.is_regular().unwrap();
                prop_assert_eq!(reg, desc.component_count().unwrap() == 1);
            }
        }
    }
}
