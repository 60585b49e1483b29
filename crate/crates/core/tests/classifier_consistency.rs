use kstrata::batch::{classify_batch, enumerate_signatures, Execution};
use kstrata::classifier::{ComponentDescriptor, ExceptionOutcome, Hyperellipticity, EXCEPTIONS};
use kstrata::{full_component_breakdown, genus_one, primitive_nonhyperelliptic_components, Signature};
use proptest::prelude::*;

/// Random signature with nonzero orders in `[-3k, 3k]` and the right sum.
fn signature(genus: u32) -> impl Strategy<Value = Signature> {
    (1u32..=6, prop::collection::vec(-18i64..=18, 0..4)).prop_filter_map("valid", move |(k, mut orders)| {
        let ki = i64::from(k);
        orders.retain(|&o| o != 0 && o.abs() <= 3 * ki);
        let last = ki * (2 * i64::from(genus) - 2) - orders.iter().sum::<i64>();
        if last == 0 {
            return None;
        }
        orders.push(last);
        Signature::new(k, genus, &orders).ok()
    })
}

proptest! {
    #[test]
    fn genus_one_report_counts_primitive_nonhyperelliptic(sig in signature(1)) {
        let report = primitive_nonhyperelliptic_components(&sig).unwrap();
        let components = genus_one::components(&sig).unwrap();
        let kept: Vec<_> = components.iter().filter(|c| c.primitive && !c.hyperelliptic).collect();
        prop_assert_eq!(report.count, kept.len());
        for (descriptor, c) in report.components.iter().zip(&kept) {
            prop_assert_eq!(
                *descriptor,
                ComponentDescriptor::GenusOne { rotation: c.rotation, primitive: true, hyperelliptic: false }
            );
        }
        let hyp = components.iter().filter(|c| c.primitive && c.hyperelliptic).count() as u64;
        prop_assert_eq!(report.hyperellipticity, Hyperellipticity::Excluded { primitive_hyperelliptic: hyp });
        prop_assert_eq!(report.count == 0, report.empty_reason.is_some());
    }

    #[test]
    fn breakdown_rows_are_reduced_classifications(sig in signature(2)) {
        let rows = full_component_breakdown(&sig).unwrap();
        prop_assert_eq!(rows.last().map(|r| r.divisor), Some(sig.k()));
        for row in rows {
            prop_assert_eq!(sig.k() % row.divisor, 0);
            let m = i64::from(sig.k() / row.divisor);
            let scaled: Vec<i64> = row.reduced.orders().iter().map(|o| o * m).collect();
            prop_assert_eq!(scaled.as_slice(), sig.orders());
            prop_assert_eq!(row.report, primitive_nonhyperelliptic_components(&row.reduced).unwrap());
        }
    }

    #[test]
    fn genus_zero_is_one_component_exactly_when_primitive(sig in signature(0)) {
        let report = primitive_nonhyperelliptic_components(&sig).unwrap();
        let d = num_integer::gcd(sig.gcd_orders(), u64::from(sig.k()));
        prop_assert_eq!(report.count, usize::from(d == 1));
    }
}

#[test]
fn exception_rows_classify_to_their_outcome() {
    for row in EXCEPTIONS {
        let sig = Signature::new(row.k, row.genus, row.orders).unwrap();
        let report = primitive_nonhyperelliptic_components(&sig).unwrap();
        let expected = match row.outcome {
            ExceptionOutcome::Empty => 0,
            ExceptionOutcome::Single => 1,
            ExceptionOutcome::Pair => 2,
            ExceptionOutcome::Cubic => 3,
        };
        assert_eq!(report.count, expected, "{sig}");
    }
}

#[test]
fn batch_modes_agree() {
    let sigs: Vec<Signature> = (1..=6u32)
        .flat_map(|k| enumerate_signatures(k, 3, 1 - i64::from(k), 3 * i64::from(k), 5))
        .collect();
    assert!(sigs.len() > 3000, "{}", sigs.len());
    assert_eq!(classify_batch(&sigs, Execution::Sequential), classify_batch(&sigs, Execution::Parallel));
}

#[test]
fn reports_serialize_with_labels() {
    let sig: Signature = "k:3 g:2 orders:(4,2)".parse().unwrap();
    let report = primitive_nonhyperelliptic_components(&sig).unwrap();
    assert_eq!(report.count, 1);
    assert_eq!(report.components, vec![ComponentDescriptor::Generic]);
}
