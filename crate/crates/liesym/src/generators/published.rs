//! Reference commutator tables as linear-combination strings, row `i`, column `j`
//! holding `[v_i, v_j]`. Entries are kept as published, typos included.

/// A published table: case id and rows of cell strings.
#[derive(Clone, Copy, Debug)]
pub struct PublishedTable {
    pub case_id: &'static str,
    pub rows: &'static [&'static [&'static str]],
}

const TABLES: &[PublishedTable] = &[
    PublishedTable {
        case_id: "1.1",
        rows: &[
            &["0", "0", "-(b/2)*v3", "-(e/2)*v4", "(b/2)*v5", "(e/2)*v6"],
            &["0", "0", "0", "0", "0", "0"],
            &["(b/2)*v3", "0", "0", "0", "b*v2", "0"],
            &["(e/2)*v4", "0", "0", "0", "0", "e*v2"],
            &["-(b/2)*v5", "0", "-b*v2", "0", "0", "0"],
            &["-(e/2)*v6", "0", "0", "-e*v2", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "1.2",
        rows: &[
            &[
                "0", "-2*b*v3", "-b*v1", "0", "0", "-b*v5", "0", "-b*v7", "0",
            ],
            &["2*b*v3", "0", "b*v2", "0", "b*v6", "0", "b*v8", "0", "0"],
            &[
                "b*v1",
                "-b*v2",
                "0",
                "0",
                "(b/2)*v5",
                "-(b/2)*v6",
                "(b/2)*v7",
                "-(b/2)*v8",
                "0",
            ],
            &[
                "0",
                "0",
                "0",
                "0",
                "(1/2)*v7",
                "(1/2)*v8",
                "-(1/2)*v5",
                "-(1/2)*v6",
                "0",
            ],
            &[
                "0",
                "-b*v6",
                "-(b/2)*v5",
                "-(1/2)*v7",
                "0",
                "-b*v9",
                "0",
                "0",
                "0",
            ],
            &[
                "b*v5",
                "0",
                "(b/2)*v6",
                "-(1/2)*v8",
                "b*v9",
                "0",
                "0",
                "0",
                "0",
            ],
            &[
                "0",
                "-b*v8",
                "-(b/2)*v7",
                "(1/2)*v5",
                "0",
                "0",
                "0",
                "-b*v9",
                "0",
            ],
            &[
                "b*v7", "0", "(b/2)*v8", "(1/2)*v6", "0", "0", "b*v9", "0", "0",
            ],
            &["0", "0", "0", "0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "1.3",
        rows: &[
            &[
                "0", "-2*b*v3", "-b*v1", "0", "0", "-b*v5", "-b*v8", "0", "0",
            ],
            &["2*b*v3", "0", "b*v2", "0", "b*v6", "0", "0", "b*v7", "0"],
            &[
                "b*v1",
                "-b*v2",
                "0",
                "0",
                "(b/2)*v5",
                "-(b/2)*v6",
                "-(b/2)*v7",
                "(b/2)*v8",
                "0",
            ],
            &[
                "0",
                "0",
                "0",
                "0",
                "(1/2)*v8",
                "(1/2)*v7",
                "-(b/2)*v6",
                "-(1/2)*v5",
                "0",
            ],
            &[
                "0",
                "-b*v6",
                "-(b/2)*v5",
                "-(1/2)*v8",
                "0",
                "-b*v9",
                "0",
                "0",
                "0",
            ],
            &[
                "b*v5",
                "0",
                "(b/2)*v6",
                "-(1/2)*v7",
                "b*v9",
                "0",
                "0",
                "0",
                "0",
            ],
            &[
                "b*v8", "0", "(b/2)*v7", "(1/2)*v6", "0", "0", "0", "b*v9", "0",
            ],
            &[
                "0",
                "-b*v7",
                "-(b/2)*v8",
                "(1/2)*v5",
                "0",
                "0",
                "-b*v9",
                "0",
                "0",
            ],
            &["0", "0", "0", "0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "1.4",
        rows: &[
            &[
                "0",
                "-v1",
                "-2*v2+(1/2)*v9",
                "0",
                "0",
                "-v5",
                "0",
                "-v7",
                "0",
            ],
            &[
                "v1",
                "0",
                "-v3",
                "0",
                "(1/2)*v5",
                "-(1/2)*v6",
                "(1/2)*v7",
                "-(1/2)*v8",
                "0",
            ],
            &["2*v2-(1/2)*v9", "v3", "0", "0", "v6", "0", "v8", "0", "0"],
            &[
                "0",
                "0",
                "0",
                "0",
                "(1/2)*v7",
                "(1/2)*v8",
                "-(1/2)*v5",
                "-(1/2)*v6",
                "0",
            ],
            &[
                "0",
                "-(1/2)*v5",
                "-v6",
                "-(1/2)*v7",
                "0",
                "-v9",
                "0",
                "0",
                "0",
            ],
            &["0", "(1/2)*v6", "0", "-(1/2)*v8", "v9", "0", "0", "0", "0"],
            &[
                "0",
                "-(1/2)*v7",
                "-v8",
                "(1/2)*v5",
                "0",
                "0",
                "0",
                "-v9",
                "0",
            ],
            &["-v7", "(1/2)*v8", "0", "(1/2)*v6", "0", "0", "v9", "0", "0"],
            &["0", "0", "0", "0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "2.1",
        rows: &[&["0", "0"], &["0", "0"]],
    },
    PublishedTable {
        case_id: "2.2",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "0"],
            &["2*b*v3", "0", "b*v2", "0"],
            &["b*v1", "-b*v2", "0", "0"],
            &["0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "2.3",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "0"],
            &["2*b*v3", "0", "2*b*v2", "0"],
            &["b*v1", "-b*v2", "0", "0"],
            &["0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "2.4",
        rows: &[
            &["0", "-v1", "-2*v2+2*(a+d)*v4", "0"],
            &["v1", "0", "-v3", "0"],
            &["2*v2-2*(a+d)*v4", "v3", "0", "0"],
            &["0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "3.1",
        rows: &[
            &["0", "0", "(b/2)*v3", "-(b/2)*v4"],
            &["0", "0", "0", "0"],
            &["-(b/2)*v3", "0", "0", "-b*v2"],
            &["(b/2)*v4", "0", "b*v2", "0"],
        ],
    },
    PublishedTable {
        case_id: "3.2",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "0", "-b*v4", "0"],
            &["2*b*v3", "0", "b*v2", "b*v5", "0", "0"],
            &["b*v1", "-b*v2", "0", "(b/2)*v4", "-(b/2)*v5", "0"],
            &["0", "-b*v5", "-(b/2)*v4", "0", "-b*v6", "0"],
            &["b*v4", "0", "(b/2)*v5", "b*v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "3.3",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "0", "-b*v4", "0"],
            &["2*b*v3", "0", "b*v2", "b*v5", "0", "0"],
            &["b*v1", "-b*v2", "0", "(b/2)*v4", "-(b/2)*v5", "0"],
            &["0", "-b*v5", "-(b/2)*v4", "0", "-b*v6", "0"],
            &["b*v4", "0", "(b/2)*v5", "b*v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "3.4",
        rows: &[
            &["0", "-v1", "-2*v2+2*(d+(1/4))*v6", "0", "-v4", "0"],
            &["v1", "0", "-v3", "(1/2)*v4", "-(1/2)*v5", "0"],
            &["2*v2-2*(d+(1/4))*v6", "v3", "0", "v5", "0", "0"],
            &["0", "-(1/2)*v4", "-v5", "0", "-v6", "0"],
            &["v4", "(1/2)*v5", "0", "v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "4.1",
        rows: &[
            &["0", "0", "(e/2)*v3", "-(e/2)*v4"],
            &["0", "0", "0", "0"],
            &["-(e/2)*v3", "0", "0", "-e*v2"],
            &["(e/2)*v4", "0", "e*v2", "0"],
        ],
    },
    PublishedTable {
        case_id: "4.2",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "0", "-b*v4", "0"],
            &["2*b*v3", "0", "b*v2", "b*v5", "0", "0"],
            &["b*v1", "-b*v2", "0", "(b/2)*v4", "-(b/2)*v5", "0"],
            &["0", "-b*v5", "-(b/2)*v4", "0", "-b*v6", "0"],
            &["b*v4", "0", "(b/2)*v5", "b*v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "4.3",
        rows: &[
            &["0", "-2*b*v3", "-b*v1", "-b*v5", "0", "0"],
            &["2*b*v3", "0", "b*v2", "0", "b*v4", "0"],
            &["b*v1", "-b*v2", "0", "-(b/2)*v4", "(b/2)*v5", "0"],
            &["b*v5", "0", "(b/2)*v4", "0", "b*v6", "0"],
            &["0", "-b*v4", "-(b/2)*v5", "-b*v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
    PublishedTable {
        case_id: "4.4",
        rows: &[
            &["0", "-v1", "-2*v2+2*(d+(1/4))*v6", "0", "-v4", "0"],
            &["v1", "0", "-v3", "(1/2)*v4", "-(1/2)*v5", "0"],
            &["2*v2-2*(d+(1/4))*v6", "v3", "0", "v5", "0", "0"],
            &["0", "-(1/2)*v4", "-v5", "0", "-v6", "0"],
            &["v4", "(1/2)*v5", "0", "v6", "0", "0"],
            &["0", "0", "0", "0", "0", "0"],
        ],
    },
];

/// Published table for a case id, if one exists.
pub fn published_table(case_id: &str) -> Option<PublishedTable> {
    TABLES.iter().find(|t| t.case_id == case_id).copied()
}
