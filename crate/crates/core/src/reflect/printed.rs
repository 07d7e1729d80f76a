use alloc::string::String;
use alloc::vec::Vec;

use super::groups::GroupLabel;
use crate::exactnum::{FieldElement, Rational};

// u-tables exactly as printed, including the entries that recomputation
// shows to be wrong (E7 u8; E8 u16 entries 3 and 4).
fn raw_table(g: GroupLabel) -> &'static [(&'static str, &'static [&'static str])] {
    match g {
        GroupLabel::F4 => &[
            ("6", &["-1", "-1/9", "1/9", "1"]),
            ("8", &["1", "-13/27", "-13/27", "1"]),
            ("12,1", &["0", "128/243", "-25/243", "1"]),
            ("12,2", &["25/128", "1751/3456", "0", "1"]),
        ],
        GroupLabel::H3 => &[
            ("6", &["-4/5+14/5*r10", "1/4-7/8*r10", "4/9-14/9*r10"]),
            ("10", &["-9927424/19683-43124224/98415*r10", "9694750/19683+8422700/19683*r10", "-1240928000/1594323-1078105600/1594323*r10"]),
            (
                "12",
                &[
                    "-6897476096/492075+191679488/492075*r10",
                    "-390677357/39366+5428423/19683*r10",
                    "6897476096/14348907-191679488/14348907*r10",
                ],
            ),
        ],
        GroupLabel::H4 => &[
            ("12", &["-4500", "540", "32500/27", "5625/4"]),
            ("20", &["6975", "-58869/25", "4035425/2187", "216225/64"]),
            ("24", &["-2367/16", "-4689027/50000", "416329/104976", "622521/16384"]),
        ],
        GroupLabel::E6 => &[
            ("5", &["3/4*r3", "6/125*r30", "0", "-6/125*r30", "-3/4*r3", "0"]),
            ("6", &["81/56", "-81/700", "-9/28", "-81/700", "81/56", "-27/28"]),
            ("8", &["800", "-6784/25", "-640/9", "-6784/25", "800", "3200/3"]),
            ("9", &["2065*r3", "-185024/625*r30", "0", "185024/625*r30", "-2065*r3", "0"]),
            ("10", &["11520/13", "423936/1625", "51200/351", "423936/1625", "11520/13", "-10240/39"]),
        ],
        GroupLabel::E7 => &[
            (
                "6",
                &[
                    "-7700659200/16807+9488793600/16807*r2",
                    "-427814400/2401+527155200/2401*r2",
                    "-1818211200/16807+2240409600/16807*r2",
                    "-547602432/16807+674758656/16807*r2",
                    "2887747200/16807-3558297600/16807*r2",
                    "20535091200/16807-25303449600/16807*r2",
                    "-123210547200/823543+151820697600/823543*r2",
                ],
            ),
            (
                "8",
                &[
                    "6579988992000/823543-5480856576000/823543*r2",
                    "731109888000/823543-608984064000/823543*r2",
                    "-3527605209600/823543+2938348108800/823543*r2",
                    "-3134999199744/823543+2611323666432/823543*r2",
                    "-1809496972800/823543+1507235558400/823543*r2",
                    "3509327462400/823543-2923123507200/823543*r2",
                    "-115807806259200/40353607+96463075737600/40353607*r2",
                ],
            ),
            (
                "10",
                &[
                    "-6428624451840/5764801+415928908800/5764801*r2",
                    "357145802880/823543-23107161600/823543*r2",
                    "2388412556760/5764801-154529143200/5764801*r2",
                    "-73143460429824/720600125+946469339136/144120025*r2",
                    "-7433097022440/5764801+480917800800/5764801*r2",
                    "30476441845760/5764801-1971811123200/5764801*r2",
                    "3291455719342080/1977326743-212955601305600/1977326743*r2",
                ],
            ),
            (
                "12,1",
                &[
                    "27363005574796800/1977326743+17942314142016000/1977326743*r2",
                    "-760132890073600/282475249-689327933184000/282475249*r2",
                    "-513174301527400/1977326743-792264524693400/1977326743*r2",
                    "-14026148038967296/49433168575-72141536776421376/49433168575*r2",
                    "3931481294451000/1977326743-4960153279164600/1977326743*r2",
                    "-12979679661260800/1977326743-37832882828083200/1977326743*r2",
                    "249757080640811827200/33232930569601+284898146732782387200/33232930569601*r2",
                ],
            ),
            (
                "12,2",
                &[
                    "-2419675164360000/1977326743-1489162193640000/1977326743*r2",
                    "113867977056000/282475249+18727597152000/282475249*r2",
                    "156757191916575/1977326743-26126480038725/1977326743*r2",
                    "16622260339703808/49433168575-6701937797136384/49433168575*r2",
                    "1494452243214675/1977326743-1107985853945025/1977326743*r2",
                    "8313279170969600/1977326743-2771226582220800/1977326743*r2",
                    "-51686387833407897600/33232930569601+773622407142604800/33232930569601*r2",
                ],
            ),
        ],
        GroupLabel::E8 => &[
            ("8", &["174182400", "4926873600/49", "82059264", "62705664", "19353600", "-116121600", "-1045094400", "97977600"]),
            (
                "12",
                &[
                    "1680315840",
                    "15655887360/49",
                    "14950365696/125",
                    "-2608490304/125",
                    "-275607360",
                    "-734952960",
                    "4480842240",
                    "148777965",
                ],
            ),
            (
                "14",
                &[
                    "1207483200",
                    "-567924825600/16807",
                    "-2009165312/15",
                    "-671799744/5",
                    "-253422400/3",
                    "184307200",
                    "-2634508800",
                    "-293294925",
                ],
            ),
            (
                "16",
                &[
                    "1490121360",
                    "-393199971840/2401",
                    "3287394820358656/1265625",
                    "36512571016971/62500",
                    "1232569520/3",
                    "2075906560",
                    "7529034240",
                    "-9749511135/16",
                ],
            ),
        ],
        _ => &[],
    }
}

/// Printed u-vectors as (label, entries).
pub fn printed_u_table(g: GroupLabel) -> Vec<(String, Vec<FieldElement>)> {
    raw_table(g).iter().map(|(l, es)| ((*l).into(), es.iter().map(|e| e.parse().expect("printed table entry")).collect())).collect()
}

/// Degree at which the corner-orbit weights are classified, and the printed
/// family in the region format (`families` module). E8 lives in the
/// appendix data file instead.
pub fn printed_family(g: GroupLabel) -> Option<(u32, &'static str)> {
    match g {
        GroupLabel::F4 => Some((
            11,
            "dep w1 = (13 - 960*w4)/960
             dep w2 = 3*(-1 + 192*w4)/256
             dep w3 = 3*(1 - 120*w4)/160
             region i
             w4 in [1/192, 1/120]",
        )),
        GroupLabel::H3 => Some((
            11,
            "region ii
             w1 = 125/5544
             w2 = 64/3465
             w3 = 27/3080",
        )),
        GroupLabel::H4 => Some((
            23,
            "dep w1 = (368 - 9625*w4)/315392
             dep w2 = 125*(16 + 5625*w4)/2359296
             dep w3 = -6561*(16 - 51975*w4)/504627200
             region iii
             w4 in [0, 16/51975]",
        )),
        GroupLabel::E6 => Some((
            9,
            "dep w1 = 2*(1 - 96*w6)/729
             dep w2 = 125*(1 + 1200*w6)/186624
             dep w3 = 1/1280 - 9*w6/16
             dep w4 = 125*(1 + 1200*w6)/186624
             dep w5 = 2*(1 - 96*w6)/729
             region iv
             w6 in [0, 1/720]",
        )),
        GroupLabel::E7 => Some((
            11,
            "dep w1 = -4*(-296924467 + 966078461040*w2 + 107900687895*w3 + 95875084800*w7)/610410794301
             dep w4 = -625*(-945994 + 3215011030*w2 + 24066363475*w3 + 1769169600*w7)/4340698981696
             dep w5 = 8*(34900936 + 247702641648*w2 + 1231161574335*w3 + 182083866624*w7)/1831232382903
             dep w6 = -27*(-32430307 + 60983896974*w2 + 30607311735*w3 + 25518620160*w7)/542587372712
             region v.1
             w2 in [0, 197/669515]
             w3 in [0, -2*(-197 + 669515*w2)/10023475)
             w7 in [0, -2401*(-394 + 1339030*w2 + 10023475*w3)/1769169600]
             region v.2
             w2 in [0, 197/669515]
             w1 = -4*(-211 + 686070*w2)/440055
             w3 = -2*(-197 + 669515*w2)/10023475
             w5 = 16*(1231 + 1230075*w2)/54126765
             w6 = -351*(-71 + 129360*w2)/16037560
             w4 = 0
             w7 = 0",
        )),
        _ => None,
    }
}

/// The H4 family with the sign of w₃ corrected (solving the system).
pub const H4_FAMILY_CORRECTED: &str = "dep w1 = (368 - 9625*w4)/315392
     dep w2 = 125*(16 + 5625*w4)/2359296
     dep w3 = 6561*(16 - 51975*w4)/504627200
     region iii
     w4 in [0, 16/51975]";

#[derive(Clone, Debug)]
pub enum PrintedVector {
    Exact(Vec<FieldElement>),
    /// Rounded decimals; compare at a relative tolerance.
    Decimal(Vec<f64>),
    /// Only linear independence of the u-vectors is claimed.
    Independence,
}

#[derive(Clone, Debug)]
pub struct PrintedCertificate {
    pub group: GroupLabel,
    /// The design strength 2s ruled out.
    pub degree: u32,
    pub combination: Vec<(&'static str, Rational)>,
    pub vector: PrintedVector,
}

fn q(n: i64) -> Rational {
    crate::exactnum::int(n)
}

fn exact(v: &[&str]) -> PrintedVector {
    PrintedVector::Exact(v.iter().map(|e| e.parse().expect("printed certificate entry")).collect())
}

pub fn printed_certificates() -> Vec<PrintedCertificate> {
    alloc::vec![
        PrintedCertificate {
            group: GroupLabel::F4,
            degree: 12,
            combination: alloc::vec![("12,1", q(-1)), ("12,2", q(2))],
            vector: exact(&["25/64", "7567/15552", "25/243", "1"]),
        },
        PrintedCertificate { group: GroupLabel::H3, degree: 12, combination: Vec::new(), vector: PrintedVector::Independence },
        PrintedCertificate {
            group: GroupLabel::H4,
            degree: 24,
            combination: alloc::vec![("20", q(1)), ("24", q(-30))],
            vector: exact(&["91305/8", "2293281/5000", "30201755/17496", "18338985/8192"]),
        },
        PrintedCertificate {
            group: GroupLabel::E6,
            degree: 10,
            combination: alloc::vec![("10", q(1)), ("8", q(1))],
            vector: exact(&["11745/2816", "13527/220000", "387/1760", "13527/220000", "11745/2816", "621/352"]),
        },
        PrintedCertificate {
            group: GroupLabel::E7,
            degree: 12,
            combination: alloc::vec![("12,1", q(-2)), ("12,2", q(-25)), ("10", q(1))],
            vector: PrintedVector::Decimal(alloc::vec![2.86443e6, 256489.0, 513956.0, 989894.0, 2.86352e6, 1.64917e7, 293023.0]),
        },
        PrintedCertificate {
            group: GroupLabel::E8,
            degree: 16,
            combination: alloc::vec![("16", q(1)), ("14", q(-3)), ("12", q(2))],
            vector: exact(&[
                "1228303440",
                "9691313402880/16807",
                "4098709695302656/1265625",
                "59096571112971/62500",
                "339192560/3",
                "53079040",
                "24394245120",
                "9089540145/16",
            ]),
        },
    ]
}
