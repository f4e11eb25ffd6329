use num_traits::ToPrimitive;
use proptest::prelude::*;

use ramified::coerce::{apply_mor, CoercionOp};
use ramified::eval::{eval_u64, normalize_point, Fuel};
use ramified::omega::{compose_maps, enumerate_monoid, eval_word, generator_words, ChainIndex, CoercionKind};
use ramified::terms::syntax::{print_term, Reader};
use ramified::terms::{numeral, stdlib, typecheck, MorTerm};

const N: usize = 4;

/// Closed points of `N_k` together with their intended value.
fn point(k: usize, depth: u32) -> BoxedStrategy<(MorTerm, u64)> {
    let leaf = (0..3u64).prop_map(move |m| (numeral(k, m as usize), m)).boxed();
    if depth == 0 {
        return leaf;
    }
    let mut arms: Vec<BoxedStrategy<(MorTerm, u64)>> = vec![
        leaf,
        point(k, depth - 1).prop_map(move |(t, v)| (MorTerm::comp(MorTerm::Succ(k), t), v + 1)).boxed(),
    ];
    if k + 1 < N {
        arms.push(point(k + 1, depth - 1).prop_map(move |(t, v)| (MorTerm::comp(MorTerm::Drop(k), t), v)).boxed());
    }
    if k >= 1 {
        arms.push(point(k - 1, depth - 1).prop_map(move |(t, v)| (MorTerm::raise(k - 1, t), v)).boxed());
    }
    if k == 0 {
        arms.push(
            (point(1, depth - 1), point(0, depth - 1))
                .prop_map(|((p, x), (q, y))| (MorTerm::comp(stdlib::plus(N), MorTerm::tensor(p, q)), x + y))
                .boxed(),
        );
    }
    proptest::strategy::Union::new(arms).boxed()
}

fn value(t: &MorTerm) -> u64 {
    let out = eval_u64(t, N, &[], Fuel::default()).expect("closed point evaluates");
    out[0].to_u64().expect("small value")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_terms_read_back((t, _) in (0..N).prop_flat_map(|k| point(k, 3))) {
        let r = Reader::new(N);
        prop_assert_eq!(r.read_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn points_denote_and_normalize_to_their_value((t, v) in (0..N).prop_flat_map(|k| point(k, 3))) {
        prop_assert_eq!(value(&t), v);
        let nf = normalize_point(&t, N, Fuel::default()).unwrap();
        prop_assert_eq!(nf.index, v);
        prop_assert_eq!(nf.term, numeral(nf.level, v as usize));
    }

    #[test]
    fn arithmetic_matches_machine_integers(x in 0u64..7, y in 0u64..7) {
        let lib = stdlib::stdlib(N);
        let run = |name: &str, a: u64, b: u64| {
            eval_u64(lib.get(name).unwrap(), N, &[a, b], Fuel::default()).unwrap()[0].to_u64().unwrap()
        };
        prop_assert_eq!(run("plus", x, y), x + y);
        prop_assert_eq!(run("times", x, y), x * y);
        prop_assert_eq!(run("exp", x % 4, y), y.pow((x % 4) as u32));
    }

    /// Coercions relabel levels but keep the value of a point.
    #[test]
    fn coercions_preserve_point_values(
        (t, v) in (0..N).prop_flat_map(|k| point(k, 2)),
        g in any::<bool>(),
        k in 0..N - 1,
    ) {
        let op = if g { CoercionOp::g(k) } else { CoercionOp::t(k) };
        let Ok(image) = apply_mor(op, &t, N) else { return Ok(()) };
        let typed = typecheck(&image, N).unwrap();
        prop_assume!(typed.cod.single_level().is_some());
        prop_assert_eq!(value(&image), v);
    }

    #[test]
    fn words_compose_like_their_maps(
        word in proptest::collection::vec((any::<bool>(), 0..N - 1), 0..8),
        split in 0usize..8,
    ) {
        let n = ChainIndex::new(N).unwrap();
        let word: Vec<_> = word
            .into_iter()
            .map(|(t, k)| (if t { CoercionKind::T } else { CoercionKind::G }, k))
            .collect();
        let split = split.min(word.len());
        let whole = eval_word(n, &word).unwrap();
        let (a, b) = word.split_at(split);
        let glued = compose_maps(&eval_word(n, a).unwrap(), &eval_word(n, b).unwrap()).unwrap();
        prop_assert_eq!(&glued, &whole);
        prop_assert!(enumerate_monoid(n).contains(&whole));
        let shortest = &generator_words(n)[&whole];
        prop_assert!(shortest.len() <= word.len());
        prop_assert_eq!(eval_word(n, shortest).unwrap(), whole);
    }
}

#[test]
fn raising_a_numeral_keeps_its_value() {
    let image = apply_mor(CoercionOp::g(0), &numeral(0, 2), N).unwrap();
    assert_eq!(typecheck(&image, N).unwrap().cod.single_level(), Some(1));
    assert_eq!(value(&image), 2);
}
