use super::{ExperimentRecord, HarnessError};

pub const CSV_HEADER: [&str; 12] = [
    "kind",
    "k",
    "l",
    "n",
    "multiplier",
    "p",
    "trials",
    "successes",
    "timeouts",
    "seed",
    "mean_ms",
    "ln_expected",
];

fn sci(x: f64) -> String {
    format!("{x:.5e}")
}

/// Header plus one LF-terminated row per record.
pub fn write_csv(records: &[ExperimentRecord]) -> String {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.kind.to_string(),
            r.k.to_string(),
            r.l.map(|l| l.to_string()).unwrap_or_default(),
            r.n.to_string(),
            sci(r.multiplier),
            sci(r.p),
            r.trials.to_string(),
            r.successes.to_string(),
            r.timeouts.to_string(),
            r.seed.to_string(),
            sci(r.mean_ms),
            r.ln_expected.map(sci).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Parses the output of [`write_csv`]. Rows are numbered from 1 for the header.
pub fn read_csv(text: &str) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let mut r = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = r.records();
    let header = rows
        .next()
        .ok_or(HarnessError::Csv {
            row: 1,
            message: "missing header".into(),
        })?
        .map_err(|e| HarnessError::Csv {
            row: 1,
            message: e.to_string(),
        })?;
    if header.iter().ne(CSV_HEADER) {
        return Err(HarnessError::Csv {
            row: 1,
            message: format!("expected header {}", CSV_HEADER.join(",")),
        });
    }
    let mut records = Vec::new();
    for (i, row) in rows.enumerate() {
        let row_no = i + 2;
        let row = row.map_err(|e| HarnessError::Csv {
            row: row_no,
            message: e.to_string(),
        })?;
        if row.len() != CSV_HEADER.len() {
            return Err(HarnessError::Csv {
                row: row_no,
                message: format!("expected {} columns, found {}", CSV_HEADER.len(), row.len()),
            });
        }
        let field = |c: usize| &row[c];
        let err = |c: usize, what: &str| HarnessError::Csv {
            row: row_no,
            message: format!("column {} ({}): {what} {:?}", c + 1, CSV_HEADER[c], &row[c]),
        };
        macro_rules! num {
            ($c:expr) => {
                field($c).parse().map_err(|_| err($c, "not a number"))?
            };
        }
        let kind = field(0).parse().map_err(|_| err(0, "unknown kind"))?;
        let l = match field(2) {
            "" => None,
            _ => Some(num!(2)),
        };
        let ln_expected = match field(11) {
            "" => None,
            _ => Some(num!(11)),
        };
        let rec = ExperimentRecord {
            kind,
            k: num!(1),
            l,
            n: num!(3),
            multiplier: num!(4),
            p: num!(5),
            trials: num!(6),
            successes: num!(7),
            timeouts: num!(8),
            seed: num!(9),
            mean_ms: num!(10),
            ln_expected,
        };
        if rec.successes + rec.timeouts > rec.trials {
            return Err(HarnessError::Csv {
                row: row_no,
                message: "successes + timeouts exceed trials".into(),
            });
        }
        records.push(rec);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_sweep, SweepConfig, SweepKind, SweepKindName};

    #[test]
    fn empty_is_header_only() {
        let text = write_csv(&[]);
        assert_eq!(text, format!("{}\n", CSV_HEADER.join(",")));
        assert_eq!(read_csv(&text).unwrap(), vec![]);
    }

    #[test]
    fn round_trip_twelve_records() {
        let mut c = SweepConfig::new(
            SweepKind::OffsetCycle { l: 1 },
            3,
            vec![9, 12, 15],
            vec![0.5, 1.0, 2.0, 4.0],
            4,
            3,
        );
        c.record_timing = true;
        let recs = run_sweep(&c).unwrap();
        assert_eq!(recs.len(), 12);
        let text = write_csv(&recs);
        assert!(!text.contains('\r'));
        for line in text.lines() {
            assert_eq!(line.split(',').count(), 12);
        }
        let back = read_csv(&text).unwrap();
        assert_eq!(back, recs);
        assert_eq!(write_csv(&back), text);
    }

    #[test]
    fn formats() {
        let rec = ExperimentRecord {
            kind: SweepKindName::Offset,
            k: 6,
            l: Some(3),
            n: 18,
            multiplier: 0.5,
            p: 0.0,
            trials: 2,
            successes: 0,
            timeouts: 0,
            seed: 7,
            mean_ms: 0.0,
            ln_expected: Some(f64::NEG_INFINITY),
        };
        let tcon = ExperimentRecord {
            kind: SweepKindName::TConnect,
            l: None,
            ln_expected: None,
            p: 0.00303489,
            ..rec.clone()
        };
        let text = write_csv(&[rec.clone(), tcon.clone()]);
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(
            rows[0],
            "offset,6,3,18,5.00000e-1,0.00000e0,2,0,0,7,0.00000e0,-inf"
        );
        assert_eq!(
            rows[1],
            "tconnect,6,,18,5.00000e-1,3.03489e-3,2,0,0,7,0.00000e0,"
        );
        assert_eq!(read_csv(&text).unwrap(), vec![rec, tcon]);
    }

    #[test]
    fn malformed() {
        let head = CSV_HEADER.join(",");
        assert!(matches!(
            read_csv(""),
            Err(HarnessError::Csv { row: 1, .. })
        ));
        assert!(matches!(
            read_csv("a,b\n"),
            Err(HarnessError::Csv { row: 1, .. })
        ));
        let short = format!("{head}\noffset,3,1\n");
        assert!(matches!(
            read_csv(&short),
            Err(HarnessError::Csv { row: 2, .. })
        ));
        let bad = format!("{head}\noffset,x,1,9,1e0,1e0,1,0,0,0,0e0,\n");
        let Err(HarnessError::Csv { row: 2, message }) = read_csv(&bad) else {
            panic!()
        };
        assert!(message.contains("column 2 (k)"), "{message}");
        let over = format!("{head}\noffset,3,1,9,1e0,1e0,1,1,1,0,0e0,\n");
        assert!(read_csv(&over).is_err());
    }
}
