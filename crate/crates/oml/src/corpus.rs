//! Published single-state lattices and their expected properties.

use oml_core::mmp::{drop_blocks, parse_mmp};
use oml_core::states::{StateClass, StateVector};
use oml_core::{MmpDiagram, Rational};

use crate::error::{Error, Result};

/// Properties claimed for an entry. `None` means no claim is made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub state_classification: Option<StateClass>,
    /// Value of every atom under the unique state, as `"p/q"`.
    pub unique_state_value: Option<&'static str>,
    pub self_dual: Option<bool>,
    pub admits_strong_set: Option<bool>,
    pub element_count: Option<u128>,
    /// Number of blocks in a largest loop.
    pub longest_loop: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub mmp_line: &'static str,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn diagram(&self) -> MmpDiagram {
        parse_mmp(self.mmp_line).expect("corpus lines parse")
    }
}

const ONE_STATE: Expected = Expected {
    state_classification: Some(StateClass::ExactlyOne),
    unique_state_value: Some("1/3"),
    self_dual: None,
    admits_strong_set: Some(false),
    element_count: None,
    longest_loop: None,
};

const fn one_state(self_dual: Option<bool>, longest_loop: Option<usize>) -> Expected {
    Expected {
        self_dual,
        longest_loop,
        ..ONE_STATE
    }
}

const NO_CLAIM: Expected = Expected {
    state_classification: None,
    unique_state_value: None,
    self_dual: None,
    admits_strong_set: None,
    element_count: None,
    longest_loop: None,
};

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "35-35a",
        mmp_line: "XYZ,Z5J,JNK,KFP,P38,8L7,7T9,9GW,WVU,UE6,6M1,1R2,2CQ,QHI,ISD,DAX,RST,OPQ,LMN,GIM,EKT,BCL,9AO,56O,34R,4AN,5BS,BFW,2JV,4HU,8DV,7HZ,3GY,1FX,CEY.",
        expected: one_state(Some(false), None),
    },
    CorpusEntry {
        name: "35-35b",
        mmp_line: "YXZ,Z3J,JTK,KNG,GU6,65R,R9A,AWE,EMI,IFQ,Q2B,BCS,S87,7O1,1VH,H4Y,UVW,RST,OPQ,LMN,HIT,DKP,48L,36O,25L,3CM,4AP,19N,2JW,CDV,8FU,BGY,9FZ,7EX,5DX.",
        expected: one_state(Some(false), None),
    },
    CorpusEntry {
        name: "35-35c",
        mmp_line: "YXZ,ZFH,HIM,MLN,NKJ,J4S,SB3,3P9,91U,UVW,WTQ,QAG,GCE,E67,7O2,28Y,RST,OPQ,FGK,DEI,ABM,89K,5LP,4HO,5FR,5DV,4CU,17R,2BV,8IT,6NW,CLY,DJX,1AX,36Z.",
        expected: one_state(Some(false), None),
    },
    CorpusEntry {
        name: "35-35d",
        mmp_line: "XYZ,ZFH,HIM,MLN,NJK,K8T,TWQ,QAE,EGC,C4U,U92,2S7,7P1,1VB,BR3,36X,UVW,RST,OPQ,FGK,DEI,ABN,89I,67G,5LS,4JP,4HR,5FO,5DV,39O,6MW,CLY,DJX,2AZ,18Y.",
        expected: one_state(Some(false), None),
    },
    CorpusEntry {
        name: "35-35e",
        mmp_line: "XYZ,Z3H,HIT,TKJ,J1V,VE8,8S7,72L,LMN,N4C,CFU,UGA,A9R,R56,6WD,DBX,UVW,RST,OPQ,GIQ,FKP,EIN,DKM,BCS,46O,38O,15L,3AM,1BQ,29P,2HW,4JY,9EX,7GY,5FZ.",
        expected: Expected {
            state_classification: Some(StateClass::MoreThanOne),
            self_dual: Some(true),
            ..NO_CLAIM
        },
    },
    CorpusEntry {
        name: "36-36",
        mmp_line: "XWY,YTS,SLP,PQ7,7RO,OZJ,J5B,BN8,82F,FCV,VH4,416,6IA,A9M,MK3,3GU,UDE,EaX,NRX,MQW,LUZ,KVa,KOT,IPa,GHY,FWZ,BDQ,ACR,9HJ,8GI,6DT,5CS,4LN,29E,135,127.",
        expected: one_state(Some(true), Some(18)),
    },
    CorpusEntry {
        name: "38-38a",
        mmp_line: "abc,c12,2L9,98J,JHU,UPQ,QKS,SNO,O7Y,YXZ,ZWV,VA5,5T4,4MB,BCD,DIF,FEG,GR3,36a,TUY,RSW,LMQ,IJW,AGH,EMZ,69X,DKX,3CP,8CO,46N,7AL,1FN,1PV,2RT,5Kb,8Eb,7Ia,BHc.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38b",
        mmp_line: "bac,cF3,3SX,XI7,7GV,VR1,14L,LZM,M9T,TNO,OAW,WPQ,QJB,BCH,HDE,E5Y,Y2U,UK6,68b,XYZ,UVW,RST,IJK,FGH,8QZ,6CS,34P,24N,8GN,9EP,ACL,5JR,DIO,FKM,1Db,2Ba,5Ac,79a.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38c",
        mmp_line: "abc,c65,5ET,TZU,U1F,FGH,H4K,KLW,WIJ,J7C,CAB,BV9,93N,NMY,YDP,POS,SQR,RX8,82a,XYZ,VWZ,DEJ,89E,6SV,7HX,5AL,AGP,2CM,6FM,INQ,2KO,1LR,4QT,3OU,1Db,GIa,4Bb,37c.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38d",
        mmp_line: "cba,a95,5FQ,QUP,PM2,2AV,VWZ,ZYX,X47,76E,E3T,TN8,8IB,B1S,SDH,HJO,OKL,LRC,CGc,TUY,RSW,MNO,IJZ,GHU,DEF,CFI,9AB,7AG,9LY,5NW,1MX,3KV,4KQ,6PR,13c,2Db,48b,6Ja.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38e",
        mmp_line: "acb,b59,9SR,RG8,83V,VWU,U1P,POY,YCN,NML,LQ2,2FT,T7X,XAE,EDH,H6I,IKJ,JZB,B4a,XYZ,STW,QRZ,FGH,CKW,9DN,78M,5AK,4AL,BDV,5FP,1JM,3IO,6QU,4OS,23c,67b,1Ec,CGa.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38f",
        mmp_line: "XZY,YTO,OA2,24a,a13,3E6,6SH,HFb,b97,7C8,8QJ,JKW,WUV,VRP,PDM,MLN,NIB,Bc5,5GX,abc,STW,QRZ,HIZ,FGV,DEY,BCT,9AR,56A,48G,2IU,1KX,1CP,7EU,9KN,FLO,4MS,3LQ,DJc.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38g",
        mmp_line: "bac,c2J,JKY,YUT,T3D,DCE,EFR,R9H,HZI,I57,7G6,6XN,NOQ,QWP,P8A,A1L,LMS,SV4,4Bb,XYZ,VWZ,RSU,FGW,9AB,8EK,5PU,3MQ,BGT,2DV,4KO,1IO,29N,7JM,CLX,5Cb,68a,1Fc,3Ha.",
        expected: one_state(Some(true), Some(19)),
    },
    CorpusEntry {
        name: "38-38h",
        mmp_line: "abc,c1K,KLX,XMN,N94,43U,UZT,T6D,DGA,AVI,IJS,SPQ,QWO,O2H,H78,8BF,FRC,C5a,XYZ,VWZ,RSY,GHY,EFW,CDL,9AB,6NQ,57M,EJM,3LO,14R,BKP,2JT,17V,5PU,68b,29a,EGc,3Ib.",
        expected: one_state(Some(true), Some(18)),
    },
    CorpusEntry {
        name: "44-44",
        mmp_line: "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NOP,PQR,RST,TUV,VWX,XYZ,Zab,bcd,def,fgh,hi1,c1E,e3G,g5I,i7K,29M,4BO,6DQ,8FS,AHU,CJW,ELY,GNa,IPc,KRe,MTg,OVi,QX2,SZ4,Ub6,Wd8,YfA,ahC.",
        expected: ONE_STATE,
    },
    CorpusEntry {
        name: "73-78-ngv",
        mmp_line: r##"123/,345,567,789,9AB,BC1,PQR,RST,TUV,VWX,XYZ,ZaP,nop,pqr,rst,tuv,vwx,xyn,DEF,FGH,HIJ,JKL,LMN,NOD,bcd,def,fgh,hij,jkl,lmb,z!","#$,$%&,&'(,()*,*-z,/EK,28G,3IO,4AF,6CH,Pci,QWe,Rgm,SYd,Uaf,n!',ou#,p%-,qw",sy$,1Pn,1Vk,2Sq,2hu,3bs,4Qv,4Up,4Yj,5gz,6Sy,6W(,6al,7cw,8Q$,9Tt,9Z),Am#,Bd%,DT!,Eer,Fc*,GXx,IZ",Jf',LWo,Mgx,Mk&."##,
        expected: Expected {
            state_classification: Some(StateClass::None),
            element_count: Some(154),
            ..NO_CLAIM
        },
    },
    CorpusEntry {
        name: "73-78-single",
        mmp_line: r##"123,345,567,789,9AB,BC1,PQR,RST,TUV,VWX,XYZ,ZaP,nop,pqr,rst,tuv,vwx,xyn,DEF,FGH,HIJ,JKL,LMN,NOD,bcd,def,fgh,hij,jkl,lmb,z!","#$,$%&,&'(,()*,*-z,/EK,28G,3IO,4AF,6CH,Pci,QWe,Rgm,SYd,Uaf,n!',ou#,p%-,qw",sy$,1Pn,1Vk,2Sq,2hu,3bs,4Qv,4Up,4Yj,5gz,6Sy,6W(,6al,7cw,8Q$,9Tt,9Z),Am#,Bd%,DT!,Eer,Fc*,GXx,IZ",Jf',LWo,Mgx,Mk&."##,
        expected: Expected {
            element_count: Some(148),
            ..ONE_STATE
        },
    },
    CorpusEntry {
        name: "73-73",
        mmp_line: r##"BC1,PQR,RST,TUV,VWX,XYZ,ZaP,nop,pqr,rst,tuv,vwx,xyn,DEF,FGH,HIJ,JKL,LMN,NOD,bcd,def,fgh,hij,jkl,lmb,z!","#$,$%&,&'(,()*,*-z,/EK,28G,3IO,4AF,6CH,Pci,QWe,Rgm,SYd,Uaf,n!',ou#,p%-,qw",sy$,1Pn,1Vk,2Sq,2hu,3bs,4Qv,4Up,4Yj,5gz,6Sy,6W(,6al,7cw,8Q$,9Tt,9Z),Am#,Bd%,DT!,Eer,Fc*,GXx,IZ",Jf',LWo,Mgx,Mk&."##,
        expected: ONE_STATE,
    },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|e| e.name)
}

pub fn entry(name: &str) -> Result<&'static CorpusEntry> {
    CORPUS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The entries with exactly one state.
pub fn single_state() -> impl Iterator<Item = &'static CorpusEntry> {
    CORPUS
        .iter()
        .filter(|e| e.expected.state_classification == Some(StateClass::ExactlyOne))
}

/// The 73-73 lattice rebuilt from 73-78-ngv by dropping its first five blocks.
pub fn derived_73_73() -> MmpDiagram {
    let ngv = entry("73-78-ngv").expect("present").diagram();
    drop_blocks(&ngv, &[0, 1, 2, 3, 4]).expect("indices in range").0
}

/// The two states of 35-35e listed with the lattice, atoms `1` to `Z`.
pub const STATES_35_35E: [&str; 2] = [
    "1/6,1/2,1/2,1/6,1/2,1/2,1/6,1/6,1/2,1/2,1/6,1/6,1/2,1/6,1/2,1/6,1/2,1/6,1/6,1/2,1/3,0,2/3,1/3,0,2/3,0,2/3,1/3,1/3,2/3,0,1/3,2/3,0",
    "1/2,1/6,1/6,1/2,1/6,1/6,1/2,1/2,1/6,1/6,1/2,1/2,1/6,1/2,1/6,1/2,1/6,1/2,1/2,1/6,1/3,2/3,0,1/3,2/3,0,2/3,0,1/3,1/3,0,2/3,1/3,0,2/3",
];

/// Parses a comma-separated list of rationals.
pub fn parse_state(text: &str) -> std::result::Result<StateVector, String> {
    text.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(StateVector::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use oml_core::mmp::{serialize_mmp, validate};

    #[test]
    fn eighteen_distinct_entries() {
        let mut n: Vec<_> = names().collect();
        assert_eq!(n.len(), 18);
        n.sort_unstable();
        n.dedup();
        assert_eq!(n.len(), 18);
    }

    #[test]
    fn every_line_is_admissible_and_round_trips() {
        for e in CORPUS {
            let d = e.diagram();
            assert!(validate(&d).greechie_admissible, "{}", e.name);
            assert_eq!(parse_mmp(&serialize_mmp(&d).unwrap()).unwrap(), d, "{}", e.name);
        }
    }

    #[test]
    fn sizes_match_names() {
        for e in CORPUS {
            let d = e.diagram();
            let mut parts = e.name.split('-');
            let atoms: usize = parts.next().unwrap().parse().unwrap();
            let blocks: usize = parts
                .next()
                .unwrap()
                .trim_end_matches(char::is_alphabetic)
                .parse()
                .unwrap();
            assert_eq!((d.atom_count(), d.block_count()), (atoms, blocks), "{}", e.name);
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(entry("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn printed_states_parse() {
        for s in STATES_35_35E {
            assert_eq!(parse_state(s).unwrap().len(), 35);
        }
    }
}
