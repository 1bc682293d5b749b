use picomm::catalog::{
    direct_product, make_cyclic, make_symmetric, parse_catalog, parse_catalog_str, seed_catalog,
    write_catalog, CatalogEntry,
};
use picomm::{Error, PermGroup, Permutation};
use proptest::prelude::*;

fn sorted_class_sizes(g: &PermGroup) -> Vec<u64> {
    let mut sizes = g.conjugacy_classes().unwrap().sizes();
    sizes.sort_unstable();
    sizes
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn cycle_notation_round_trips(p in (1usize..=9).prop_flat_map(arb_perm)) {
        let text = p.to_string();
        let back = Permutation::parse_cycles(&text, p.degree()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn written_catalog_reparses_to_same_groups(
        gens in (2usize..=6).prop_flat_map(|n| prop::collection::vec(arb_perm(n), 1..=3)),
    ) {
        let degree = gens[0].degree();
        let order = PermGroup::from_generators(&gens).unwrap().order();
        let line = serde_json::json!({
            "id": "random",
            "degree": degree,
            "gens": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "order": order,
        });
        let entries = parse_catalog_str(&line.to_string(), "<mem>").unwrap();
        let mut buf = Vec::new();
        write_catalog(&entries, &mut buf).unwrap();
        let again = parse_catalog_str(std::str::from_utf8(&buf).unwrap(), "<mem>").unwrap();
        prop_assert_eq!(again.len(), 1);
        let (a, b) = (entries[0].build().unwrap(), again[0].build().unwrap());
        prop_assert_eq!(a.order(), b.order());
        prop_assert_eq!(sorted_class_sizes(&a), sorted_class_sizes(&b));
    }
}

#[test]
fn seed_catalog_survives_file_round_trip() {
    let seed: Vec<CatalogEntry> = seed_catalog()
        .into_iter()
        .filter(|e| e.expected_order.is_some_and(|o| o <= 2000))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seed.jsonl");
    write_catalog(&seed, std::fs::File::create(&path).unwrap()).unwrap();
    let back = parse_catalog(&path).unwrap();
    assert_eq!(back.len(), seed.len());
    for (a, b) in seed.iter().zip(&back) {
        assert_eq!(a.id, b.id);
        let (ga, gb) = (a.build().unwrap(), b.build().unwrap());
        assert_eq!(ga.order(), gb.order(), "{}", a.id);
        assert_eq!(sorted_class_sizes(&ga), sorted_class_sizes(&gb), "{}", a.id);
    }
}

#[test]
fn seed_catalog_has_no_duplicate_ids_and_declared_orders_hold() {
    let seed = seed_catalog();
    let mut ids: Vec<&str> = seed.iter().map(|e| e.id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), seed.len());
    for e in seed
        .iter()
        .filter(|e| e.expected_order.is_some_and(|o| o <= 5000))
    {
        e.build().unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
}

#[test]
fn malformed_lines_report_their_position() {
    let text = "{\"id\":\"a\",\"degree\":3,\"gens\":[\"(1,2)\"]}\n{\"id\":\"b\",\"degree\":3,\"gens\":[\"(1,4)\"]}\n";
    match parse_catalog_str(text, "cat.jsonl") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    let dup = "{\"id\":\"a\",\"degree\":2,\"gens\":[\"(1,2)\"]}\n{\"id\":\"a\",\"degree\":2,\"gens\":[\"(1,2)\"]}\n";
    assert!(matches!(
        parse_catalog_str(dup, "x"),
        Err(Error::DuplicateId(_))
    ));
    let wrong = "{\"id\":\"a\",\"degree\":3,\"gens\":[\"(1,2,3)\"],\"order\":6}\n";
    assert!(matches!(
        parse_catalog_str(wrong, "x"),
        Err(Error::OrderMismatch { .. })
    ));
}

#[test]
fn product_order_is_product_of_orders() {
    let a = make_symmetric(3).unwrap();
    let b = make_cyclic(4).unwrap();
    let p = direct_product(&a, &b);
    assert_eq!(p.build().unwrap().order(), 24);
    assert_eq!(p.degree, 7);
}
