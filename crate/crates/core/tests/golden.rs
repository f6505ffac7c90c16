use pretzel_slice::{
    certify_with, feet_placement, pair_iterative, CertifyOptions, Direction, SignSeq, SpliceDiagram,
};

fn seq(s: &str) -> SignSeq {
    s.parse().unwrap()
}

#[test]
fn certificate_json_is_stable() {
    let cert = certify_with(
        &seq("+-+-+"),
        CertifyOptions {
            random_orders: 4,
            ..Default::default()
        },
    )
    .unwrap();
    let expected = include_str!("golden/certificate_alternating.json");
    assert_eq!(cert.to_json() + "\n", expected);
}

#[test]
fn diagram_dump_after_outer_bands() {
    let s = seq("+-+-+");
    let a = feet_placement(&pair_iterative(&s, Direction::Ccw).unwrap());
    let d = SpliceDiagram::build(&s).apply_all(&a).unwrap();
    assert_eq!(
        d.dump(),
        include_str!("golden/diagram_alternating_after_a.txt")
    );
}

#[test]
fn dot_files_match_figures() {
    for (s, golden) in [
        ("+-+-+", include_str!("golden/graph_alternating.dot")),
        ("+++--", include_str!("golden/graph_three_two.dot")),
    ] {
        assert_eq!(
            pretzel_slice::AuxGraph::build(&seq(s)).unwrap().to_dot(),
            golden
        );
    }
}
