//! The pointwise identities linking path statistics to statistics of the
//! peakless Motzkin image.

use airpocket::bijections::psi;
use airpocket::statistics::{air_stat, motzkin_stat};
use airpocket::{AirPocketPath, StatId};

pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
}

pub fn checks(path: &AirPocketPath, kmax: u32) -> Vec<Check> {
    let m = psi(path);
    let a = |s| air_stat(path, s).unwrap() as i64;
    let w = |s| motzkin_stat(&m, s).unwrap() as i64;
    let mut out = vec![
        Check {
            name: "U = F + U".into(),
            lhs: a(StatId::UCount),
            rhs: w(StatId::MF) + w(StatId::MU),
        },
        Check {
            name: "D1 = [F] + UFD + [UMD] + UUMDD".into(),
            lhs: a(StatId::D1Count),
            rhs: w(StatId::MIndF) + w(StatId::MUfd) + w(StatId::MIndUmd) + w(StatId::MU2md2),
        },
        Check {
            name: "DU = UFD + UUMDD".into(),
            lhs: a(StatId::DuCount),
            rhs: w(StatId::MUfd) + w(StatId::MU2md2),
        },
        Check {
            name: "UU = F - 1".into(),
            lhs: a(StatId::UuCount),
            rhs: w(StatId::MF) - 1,
        },
        Check {
            name: "Peak = U + 1".into(),
            lhs: a(StatId::Peak),
            rhs: w(StatId::MU) + 1,
        },
        Check {
            name: "Ret = n - LastF".into(),
            lhs: a(StatId::Ret),
            rhs: path.len() as i64 - w(StatId::MLastF),
        },
        Check {
            name: "SLast = Ret".into(),
            lhs: a(StatId::SLast),
            rhs: w(StatId::MRet),
        },
    ];
    for k in 1..=kmax {
        out.push(Check {
            name: format!("Delta_{k} = [F^k] + UF^kD + [F^(k-1)UMD] + UF^(k-1)UMDD"),
            lhs: a(StatId::Delta(k)),
            rhs: w(StatId::MIndFk(k))
                + w(StatId::MUfkd(k))
                + w(StatId::MIndFk1umd(k))
                + w(StatId::MUfk1umd2(k)),
        });
    }
    out
}
