#![allow(dead_code)]

use chart_core::{BiDegree, Chart};
use spectral_maps::{ChartMap, DifferentialTable, MapSpec};

pub fn b(s: i64, f: i64) -> BiDegree {
    BiDegree::new(s, f)
}

pub fn ko() -> Chart {
    Chart::from_json(include_str!("../../../fixtures/charts/ko.json")).unwrap()
}

pub fn tmf() -> Chart {
    Chart::from_json(include_str!("../../../fixtures/charts/tmf.json")).unwrap()
}

pub fn tmf03() -> Chart {
    Chart::from_json(include_str!("../../../fixtures/charts/tmf03.json")).unwrap()
}

pub fn psi3() -> ChartMap {
    let spec = MapSpec::from_json(include_str!("../../../fixtures/maps/ko_psi3.json")).unwrap();
    let k = ko();
    ChartMap::from_spec(&spec, &k, &k).unwrap()
}

pub fn qp3_spec() -> MapSpec {
    MapSpec::from_json(include_str!("../../../fixtures/maps/qp3.json")).unwrap()
}

pub fn qp3() -> ChartMap {
    ChartMap::from_spec(&qp3_spec(), &tmf(), &tmf03()).unwrap()
}

pub fn table2() -> DifferentialTable {
    DifferentialTable::from_json(include_str!("../../../fixtures/table2.json")).unwrap()
}
