use analytic_signal::{FieldSample, C64};
use framelab::io::{csv_string, parse_csv, parse_raw64, raw64_bytes};
use framelab::{fmt_f64, KeyValues};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSample> {
    (prop::collection::vec(1usize..5, 1..=3), -1e3f64..1e3, 1e-3f64..10.0).prop_flat_map(|(dims, o, h)| {
        let n: usize = dims.iter().product();
        let nd = dims.len();
        prop::collection::vec((any::<f64>(), any::<f64>()), n).prop_map(move |v| {
            let vals = v
                .into_iter()
                .map(|(a, b)| C64::new(if a.is_finite() { a } else { 0.0 }, if b.is_finite() { b } else { 1.0 }))
                .collect();
            FieldSample::new(dims.clone(), vec![o; nd], vec![h; nd], vals).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn fmt_f64_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn raw64_round_trips(f in field()) {
        prop_assert_eq!(parse_raw64(&raw64_bytes(&f)).unwrap(), f);
    }

    #[test]
    fn csv_round_trips_values_exactly(f in field()) {
        let g = parse_csv(csv_string(&f).as_bytes()).unwrap();
        prop_assert_eq!(g.values(), f.values());
        // singleton axes lose their spacing but keep the origin
        for d in 0..f.ndim() {
            prop_assert_eq!(g.dims()[d], f.dims()[d]);
            prop_assert!((g.origin()[d] - f.origin()[d]).abs() <= 1e-12 * f.origin()[d].abs().max(1.0));
            if f.dims()[d] > 1 {
                prop_assert!((g.spacing()[d] / f.spacing()[d] - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn truncated_raw64_is_rejected(f in field(), cut in 1usize..64) {
        let b = raw64_bytes(&f);
        let k = b.len().saturating_sub(cut);
        prop_assert!(parse_raw64(&b[..k]).is_err());
    }

    #[test]
    fn key_values_echo_in_order(vals in prop::collection::vec(-1e6f64..1e6, 1..6)) {
        let items: Vec<String> = vals.iter().enumerate().map(|(i, v)| format!("k{i}={v}")).collect();
        let kv = KeyValues::parse(&items).unwrap();
        prop_assert_eq!(kv.echo(), items.join("; "));
        for (i, v) in vals.iter().enumerate() {
            prop_assert_eq!(kv.f64(&format!("k{i}"), f64::NAN).unwrap(), *v);
        }
    }
}
