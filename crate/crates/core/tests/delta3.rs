use fasd::delta3::{good_g_coloring, SpecialFrame, SpecialRoute, TraceEvent};
use fasd::fasd::verify_good_coloring;
use fasd::generators::{directed_cycle, random_orgraph, RandomOrgraph};
use fasd::{Digraph, Error};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn route_name(r: &SpecialRoute) -> &'static str {
    match r {
        SpecialRoute::SharedInColor => "shared-in",
        SpecialRoute::SharedOutColor => "shared-out",
        SpecialRoute::CrossArc => "cross",
        SpecialRoute::FourColors => "four",
        SpecialRoute::Enumerated { .. } => "enumerated",
    }
}

#[test]
fn random_degree_three_graphs_for_each_girth() {
    for g in 3..=5 {
        let mut events: BTreeMap<&str, usize> = BTreeMap::new();
        for seed in 0..400u64 {
            let n = 4 + seed as usize % 60;
            let d = random_orgraph(n, 3, g, seed);
            let run = good_g_coloring(&d, g).unwrap_or_else(|e| panic!("g={g} seed={seed}: {e}"));
            assert_eq!(run.coloring.t, g);
            verify_good_coloring(&d, &run.coloring).unwrap();
            for ev in &run.trace {
                let key = match ev {
                    TraceEvent::Split { .. } => "split",
                    TraceEvent::Cycle { .. } => "cycle",
                    TraceEvent::LongPath { .. } => "long",
                    TraceEvent::ShortPath { .. } => "short",
                    TraceEvent::Special { route } => route_name(route),
                };
                *events.entry(key).or_default() += 1;
            }
        }
        eprintln!("g={g}: {events:?}");
        for key in ["split", "cycle", "long"] {
            assert!(events.contains_key(key), "g={g} never used {key}");
        }
        if g >= 4 {
            assert!(events.contains_key("short"), "g={g} never used a short path");
        }
    }
}

#[test]
fn dense_cubic_like_graphs_at_girth_five() {
    let mut events: BTreeMap<&str, usize> = BTreeMap::new();
    for seed in 0..1500u64 {
        let n = 10 + seed as usize % 50;
        let d = RandomOrgraph { n, max_degree: 3, min_girth: 5, max_arcs: None }.generate(seed ^ 0x5eed);
        let run = good_g_coloring(&d, 5).unwrap_or_else(|e| panic!("seed={seed}: {e} on {:?}", d.arcs()));
        for ev in &run.trace {
            if let TraceEvent::Special { route } = ev {
                *events.entry(route_name(route)).or_default() += 1;
            }
        }
    }
    eprintln!("special routes: {events:?}");
    assert!(events.values().sum::<usize>() > 0);
}

#[test]
fn preconditions() {
    let c4 = directed_cycle(4).unwrap();
    assert!(matches!(good_g_coloring(&c4, 5), Err(Error::Precondition(_))));
    assert!(matches!(good_g_coloring(&c4, 6), Err(Error::Precondition(_))));
    let star = Digraph::new(5, (1..5).map(|v| (0, v)).collect()).unwrap();
    assert!(matches!(good_g_coloring(&star, 3), Err(Error::Precondition(_))));
    let run = good_g_coloring(&c4, 4).unwrap();
    assert_eq!(run.coloring.colors, vec![0, 1, 2, 3]);
    assert_eq!(run.trace, vec![TraceEvent::Cycle { length: 4 }]);
}

#[test]
fn frame_moves_check_their_preconditions() {
    // 0 -> 1 -> 2 -> 3 -> 8 -> 0 with pendant arcs 4 -> 1 and 2 -> 5
    let d = Digraph::new(9, vec![(0, 1), (1, 2), (2, 3), (3, 8), (4, 1), (2, 5), (6, 7), (8, 0)]).unwrap();
    let frame = SpecialFrame::new(&d, [6, 4], [7, 5]).unwrap();
    assert!(SpecialFrame::new(&d, [6, 6], [7, 5]).is_err());
    let mut c = vec![0, 1, 2, 3, 4, 4, 0, 3];
    assert!(frame.swap_in_out(&mut c, 1).is_err());
    frame.swap_in_out(&mut c, 3).unwrap();
    assert_eq!(c[2..4], [3, 2]);
    frame.permute_path_colors(&mut c, &[2, 3, 8], &[1, 0]).unwrap();
    assert_eq!(c[2..4], [2, 3]);
    assert!(frame.permute_path_colors(&mut c, &[2, 3, 8], &[0, 0]).is_err());
    assert!(frame.permute_path_colors(&mut c, &[1, 2, 3], &[1, 0]).is_err());
    assert!(frame.recolor_repeated(&mut c, &[2, 3, 8], 0, 4).is_err());
    c[3] = 2;
    frame.recolor_repeated(&mut c, &[2, 3, 8], 1, 4).unwrap();
    assert_eq!(c[3], 4);
    frame.make_special(&mut c);
    assert!(frame.is_special(&c));
    assert_eq!((c[4], c[5], c[6]), (0, 0, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn constructed_colorings_are_good(n in 1usize..50, seed in any::<u64>(), g in 3usize..6) {
        let d = random_orgraph(n, 3, g, seed);
        let run = good_g_coloring(&d, g).unwrap();
        prop_assert!(verify_good_coloring(&d, &run.coloring).is_ok());
    }
}
