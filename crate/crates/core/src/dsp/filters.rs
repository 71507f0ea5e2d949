//! Filter banks for the shipped wavelet families.
//!
//! Values are the standard published decomposition/reconstruction pairs,
//! stored as `[dec_lo, dec_hi, rec_lo, rec_hi]` with equal lengths.

pub(crate) struct FilterBank {
    pub dec_lo: &'static [f64],
    pub dec_hi: &'static [f64],
    pub rec_lo: &'static [f64],
    pub rec_hi: &'static [f64],
}

const DB1_DEC_LO: [f64; 2] = [
    0.7071067811865476,
    0.7071067811865476,
];

const DB1_DEC_HI: [f64; 2] = [
    -0.7071067811865476,
    0.7071067811865476,
];

const DB1_REC_LO: [f64; 2] = [
    0.7071067811865476,
    0.7071067811865476,
];

const DB1_REC_HI: [f64; 2] = [
    0.7071067811865476,
    -0.7071067811865476,
];

const DB2_DEC_LO: [f64; 4] = [
    -0.12940952255126037,
    0.2241438680420134,
    0.8365163037378079,
    0.48296291314453416,
];

const DB2_DEC_HI: [f64; 4] = [
    -0.48296291314453416,
    0.8365163037378079,
    -0.2241438680420134,
    -0.12940952255126037,
];

const DB2_REC_LO: [f64; 4] = [
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
];

const DB2_REC_HI: [f64; 4] = [
    -0.12940952255126037,
    -0.2241438680420134,
    0.8365163037378079,
    -0.48296291314453416,
];

const DB3_DEC_LO: [f64; 6] = [
    0.03522629188570953,
    -0.08544127388202666,
    -0.13501102001025458,
    0.45987750211849154,
    0.8068915093110925,
    0.33267055295008263,
];

const DB3_DEC_HI: [f64; 6] = [
    -0.33267055295008263,
    0.8068915093110925,
    -0.45987750211849154,
    -0.13501102001025458,
    0.08544127388202666,
    0.03522629188570953,
];

const DB3_REC_LO: [f64; 6] = [
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
];

const DB3_REC_HI: [f64; 6] = [
    0.03522629188570953,
    0.08544127388202666,
    -0.13501102001025458,
    -0.45987750211849154,
    0.8068915093110925,
    -0.33267055295008263,
];

const DB4_DEC_LO: [f64; 8] = [
    -0.010597401785069032,
    0.0328830116668852,
    0.030841381835560764,
    -0.18703481171909309,
    -0.027983769416859854,
    0.6308807679298589,
    0.7148465705529157,
    0.2303778133088965,
];

const DB4_DEC_HI: [f64; 8] = [
    -0.2303778133088965,
    0.7148465705529157,
    -0.6308807679298589,
    -0.027983769416859854,
    0.18703481171909309,
    0.030841381835560764,
    -0.0328830116668852,
    -0.010597401785069032,
];

const DB4_REC_LO: [f64; 8] = [
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

const DB4_REC_HI: [f64; 8] = [
    -0.010597401785069032,
    -0.0328830116668852,
    0.030841381835560764,
    0.18703481171909309,
    -0.027983769416859854,
    -0.6308807679298589,
    0.7148465705529157,
    -0.2303778133088965,
];

const DB5_DEC_LO: [f64; 10] = [
    0.0033357252854737712,
    -0.012580751999081999,
    -0.006241490212798274,
    0.07757149384004572,
    -0.032244869584638375,
    -0.24229488706638203,
    0.13842814590132074,
    0.7243085284377729,
    0.6038292697971896,
    0.16010239797419293,
];

const DB5_DEC_HI: [f64; 10] = [
    -0.16010239797419293,
    0.6038292697971896,
    -0.7243085284377729,
    0.13842814590132074,
    0.24229488706638203,
    -0.032244869584638375,
    -0.07757149384004572,
    -0.006241490212798274,
    0.012580751999081999,
    0.0033357252854737712,
];

const DB5_REC_LO: [f64; 10] = [
    0.16010239797419293,
    0.6038292697971896,
    0.7243085284377729,
    0.13842814590132074,
    -0.24229488706638203,
    -0.032244869584638375,
    0.07757149384004572,
    -0.006241490212798274,
    -0.012580751999081999,
    0.0033357252854737712,
];

const DB5_REC_HI: [f64; 10] = [
    0.0033357252854737712,
    0.012580751999081999,
    -0.006241490212798274,
    -0.07757149384004572,
    -0.032244869584638375,
    0.24229488706638203,
    0.13842814590132074,
    -0.7243085284377729,
    0.6038292697971896,
    -0.16010239797419293,
];

const DB6_DEC_LO: [f64; 12] = [
    -0.0010773010853084796,
    0.004777257510945511,
    0.0005538422011614961,
    -0.03158203931748603,
    0.027522865530305727,
    0.09750160558732304,
    -0.12976686756726194,
    -0.22626469396543983,
    0.31525035170919763,
    0.7511339080210954,
    0.49462389039845306,
    0.11154074335010947,
];

const DB6_DEC_HI: [f64; 12] = [
    -0.11154074335010947,
    0.49462389039845306,
    -0.7511339080210954,
    0.31525035170919763,
    0.22626469396543983,
    -0.12976686756726194,
    -0.09750160558732304,
    0.027522865530305727,
    0.03158203931748603,
    0.0005538422011614961,
    -0.004777257510945511,
    -0.0010773010853084796,
];

const DB6_REC_LO: [f64; 12] = [
    0.11154074335010947,
    0.49462389039845306,
    0.7511339080210954,
    0.31525035170919763,
    -0.22626469396543983,
    -0.12976686756726194,
    0.09750160558732304,
    0.027522865530305727,
    -0.03158203931748603,
    0.0005538422011614961,
    0.004777257510945511,
    -0.0010773010853084796,
];

const DB6_REC_HI: [f64; 12] = [
    -0.0010773010853084796,
    -0.004777257510945511,
    0.0005538422011614961,
    0.03158203931748603,
    0.027522865530305727,
    -0.09750160558732304,
    -0.12976686756726194,
    0.22626469396543983,
    0.31525035170919763,
    -0.7511339080210954,
    0.49462389039845306,
    -0.11154074335010947,
];

const DB7_DEC_LO: [f64; 14] = [
    0.00035371379997452024,
    -0.0018016407040474908,
    0.0004295779729213665,
    0.01255099855609984,
    -0.01657454163066688,
    -0.03802993693501441,
    0.08061260915108308,
    0.07130921926683026,
    -0.22403618499387498,
    -0.14390600392856498,
    0.4697822874051931,
    0.7291320908462351,
    0.3965393194819173,
    0.07785205408500918,
];

const DB7_DEC_HI: [f64; 14] = [
    -0.07785205408500918,
    0.3965393194819173,
    -0.7291320908462351,
    0.4697822874051931,
    0.14390600392856498,
    -0.22403618499387498,
    -0.07130921926683026,
    0.08061260915108308,
    0.03802993693501441,
    -0.01657454163066688,
    -0.01255099855609984,
    0.0004295779729213665,
    0.0018016407040474908,
    0.00035371379997452024,
];

const DB7_REC_LO: [f64; 14] = [
    0.07785205408500918,
    0.3965393194819173,
    0.7291320908462351,
    0.4697822874051931,
    -0.14390600392856498,
    -0.22403618499387498,
    0.07130921926683026,
    0.08061260915108308,
    -0.03802993693501441,
    -0.01657454163066688,
    0.01255099855609984,
    0.0004295779729213665,
    -0.0018016407040474908,
    0.00035371379997452024,
];

const DB7_REC_HI: [f64; 14] = [
    0.00035371379997452024,
    0.0018016407040474908,
    0.0004295779729213665,
    -0.01255099855609984,
    -0.01657454163066688,
    0.03802993693501441,
    0.08061260915108308,
    -0.07130921926683026,
    -0.22403618499387498,
    0.14390600392856498,
    0.4697822874051931,
    -0.7291320908462351,
    0.3965393194819173,
    -0.07785205408500918,
];

const DB8_DEC_LO: [f64; 16] = [
    -0.00011747678412476953,
    0.0006754494064505693,
    -0.00039174037337694705,
    -0.004870352993451574,
    0.008746094047405777,
    0.013981027917398282,
    -0.044088253930794755,
    -0.017369301001807547,
    0.12874742662047847,
    0.0004724845739132828,
    -0.2840155429615469,
    -0.015829105256349306,
    0.5853546836542067,
    0.6756307362972898,
    0.31287159091429995,
    0.05441584224310401,
];

const DB8_DEC_HI: [f64; 16] = [
    -0.05441584224310401,
    0.31287159091429995,
    -0.6756307362972898,
    0.5853546836542067,
    0.015829105256349306,
    -0.2840155429615469,
    -0.0004724845739132828,
    0.12874742662047847,
    0.017369301001807547,
    -0.044088253930794755,
    -0.013981027917398282,
    0.008746094047405777,
    0.004870352993451574,
    -0.00039174037337694705,
    -0.0006754494064505693,
    -0.00011747678412476953,
];

const DB8_REC_LO: [f64; 16] = [
    0.05441584224310401,
    0.31287159091429995,
    0.6756307362972898,
    0.5853546836542067,
    -0.015829105256349306,
    -0.2840155429615469,
    0.0004724845739132828,
    0.12874742662047847,
    -0.017369301001807547,
    -0.044088253930794755,
    0.013981027917398282,
    0.008746094047405777,
    -0.004870352993451574,
    -0.00039174037337694705,
    0.0006754494064505693,
    -0.00011747678412476953,
];

const DB8_REC_HI: [f64; 16] = [
    -0.00011747678412476953,
    -0.0006754494064505693,
    -0.00039174037337694705,
    0.004870352993451574,
    0.008746094047405777,
    -0.013981027917398282,
    -0.044088253930794755,
    0.017369301001807547,
    0.12874742662047847,
    -0.0004724845739132828,
    -0.2840155429615469,
    0.015829105256349306,
    0.5853546836542067,
    -0.6756307362972898,
    0.31287159091429995,
    -0.05441584224310401,
];

const DB9_DEC_LO: [f64; 18] = [
    3.93473203162716e-05,
    -0.0002519631889427101,
    0.00023038576352319597,
    0.0018476468830562265,
    -0.00428150368246343,
    -0.004723204757751397,
    0.022361662123679096,
    0.00025094711483145197,
    -0.06763282906132997,
    0.03072568147933338,
    0.14854074933810638,
    -0.09684078322297646,
    -0.2932737832791749,
    0.13319738582500756,
    0.6572880780513005,
    0.6048231236901112,
    0.24383467461259034,
    0.038077947363878345,
];

const DB9_DEC_HI: [f64; 18] = [
    -0.038077947363878345,
    0.24383467461259034,
    -0.6048231236901112,
    0.6572880780513005,
    -0.13319738582500756,
    -0.2932737832791749,
    0.09684078322297646,
    0.14854074933810638,
    -0.03072568147933338,
    -0.06763282906132997,
    -0.00025094711483145197,
    0.022361662123679096,
    0.004723204757751397,
    -0.00428150368246343,
    -0.0018476468830562265,
    0.00023038576352319597,
    0.0002519631889427101,
    3.93473203162716e-05,
];

const DB9_REC_LO: [f64; 18] = [
    0.038077947363878345,
    0.24383467461259034,
    0.6048231236901112,
    0.6572880780513005,
    0.13319738582500756,
    -0.2932737832791749,
    -0.09684078322297646,
    0.14854074933810638,
    0.03072568147933338,
    -0.06763282906132997,
    0.00025094711483145197,
    0.022361662123679096,
    -0.004723204757751397,
    -0.00428150368246343,
    0.0018476468830562265,
    0.00023038576352319597,
    -0.0002519631889427101,
    3.93473203162716e-05,
];

const DB9_REC_HI: [f64; 18] = [
    3.93473203162716e-05,
    0.0002519631889427101,
    0.00023038576352319597,
    -0.0018476468830562265,
    -0.00428150368246343,
    0.004723204757751397,
    0.022361662123679096,
    -0.00025094711483145197,
    -0.06763282906132997,
    -0.03072568147933338,
    0.14854074933810638,
    0.09684078322297646,
    -0.2932737832791749,
    -0.13319738582500756,
    0.6572880780513005,
    -0.6048231236901112,
    0.24383467461259034,
    -0.038077947363878345,
];

const DB10_DEC_LO: [f64; 20] = [
    -1.3264202894521244e-05,
    9.358867032006959e-05,
    -0.00011646685512928545,
    -0.0006858566949597116,
    0.001992405295185056,
    0.001395351747052901,
    -0.010733175483330575,
    0.0036065535669561697,
    0.033212674059341,
    -0.029457536821875813,
    -0.07139414716639708,
    0.09305736460357235,
    0.12736934033579325,
    -0.19594627437737705,
    -0.24984642432731538,
    0.2811723436605775,
    0.6884590394536035,
    0.5272011889317256,
    0.1881768000776915,
    0.026670057900555554,
];

const DB10_DEC_HI: [f64; 20] = [
    -0.026670057900555554,
    0.1881768000776915,
    -0.5272011889317256,
    0.6884590394536035,
    -0.2811723436605775,
    -0.24984642432731538,
    0.19594627437737705,
    0.12736934033579325,
    -0.09305736460357235,
    -0.07139414716639708,
    0.029457536821875813,
    0.033212674059341,
    -0.0036065535669561697,
    -0.010733175483330575,
    -0.001395351747052901,
    0.001992405295185056,
    0.0006858566949597116,
    -0.00011646685512928545,
    -9.358867032006959e-05,
    -1.3264202894521244e-05,
];

const DB10_REC_LO: [f64; 20] = [
    0.026670057900555554,
    0.1881768000776915,
    0.5272011889317256,
    0.6884590394536035,
    0.2811723436605775,
    -0.24984642432731538,
    -0.19594627437737705,
    0.12736934033579325,
    0.09305736460357235,
    -0.07139414716639708,
    -0.029457536821875813,
    0.033212674059341,
    0.0036065535669561697,
    -0.010733175483330575,
    0.001395351747052901,
    0.001992405295185056,
    -0.0006858566949597116,
    -0.00011646685512928545,
    9.358867032006959e-05,
    -1.3264202894521244e-05,
];

const DB10_REC_HI: [f64; 20] = [
    -1.3264202894521244e-05,
    -9.358867032006959e-05,
    -0.00011646685512928545,
    0.0006858566949597116,
    0.001992405295185056,
    -0.001395351747052901,
    -0.010733175483330575,
    -0.0036065535669561697,
    0.033212674059341,
    0.029457536821875813,
    -0.07139414716639708,
    -0.09305736460357235,
    0.12736934033579325,
    0.19594627437737705,
    -0.24984642432731538,
    -0.2811723436605775,
    0.6884590394536035,
    -0.5272011889317256,
    0.1881768000776915,
    -0.026670057900555554,
];

const BIOR1_1_DEC_LO: [f64; 2] = [
    0.7071067811865476,
    0.7071067811865476,
];

const BIOR1_1_DEC_HI: [f64; 2] = [
    -0.7071067811865476,
    0.7071067811865476,
];

const BIOR1_1_REC_LO: [f64; 2] = [
    0.7071067811865476,
    0.7071067811865476,
];

const BIOR1_1_REC_HI: [f64; 2] = [
    0.7071067811865476,
    -0.7071067811865476,
];

const BIOR1_3_DEC_LO: [f64; 6] = [
    -0.08838834764831845,
    0.08838834764831845,
    0.7071067811865476,
    0.7071067811865476,
    0.08838834764831845,
    -0.08838834764831845,
];

const BIOR1_3_DEC_HI: [f64; 6] = [
    -0.0,
    0.0,
    -0.7071067811865476,
    0.7071067811865476,
    -0.0,
    0.0,
];

const BIOR1_3_REC_LO: [f64; 6] = [
    0.0,
    0.0,
    0.7071067811865476,
    0.7071067811865476,
    0.0,
    0.0,
];

const BIOR1_3_REC_HI: [f64; 6] = [
    -0.08838834764831845,
    -0.08838834764831845,
    0.7071067811865476,
    -0.7071067811865476,
    0.08838834764831845,
    0.08838834764831845,
];

const BIOR1_5_DEC_LO: [f64; 10] = [
    0.016572815184059706,
    -0.016572815184059706,
    -0.12153397801643785,
    0.12153397801643785,
    0.7071067811865476,
    0.7071067811865476,
    0.12153397801643785,
    -0.12153397801643785,
    -0.016572815184059706,
    0.016572815184059706,
];

const BIOR1_5_DEC_HI: [f64; 10] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.7071067811865476,
    0.7071067811865476,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR1_5_REC_LO: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.7071067811865476,
    0.7071067811865476,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR1_5_REC_HI: [f64; 10] = [
    0.016572815184059706,
    0.016572815184059706,
    -0.12153397801643785,
    -0.12153397801643785,
    0.7071067811865476,
    -0.7071067811865476,
    0.12153397801643785,
    0.12153397801643785,
    -0.016572815184059706,
    -0.016572815184059706,
];

const BIOR2_2_DEC_LO: [f64; 6] = [
    0.0,
    -0.1767766952966369,
    0.3535533905932738,
    1.0606601717798212,
    0.3535533905932738,
    -0.1767766952966369,
];

const BIOR2_2_DEC_HI: [f64; 6] = [
    -0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    -0.0,
    0.0,
];

const BIOR2_2_REC_LO: [f64; 6] = [
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
];

const BIOR2_2_REC_HI: [f64; 6] = [
    0.0,
    0.1767766952966369,
    0.3535533905932738,
    -1.0606601717798212,
    0.3535533905932738,
    0.1767766952966369,
];

const BIOR2_4_DEC_LO: [f64; 10] = [
    0.0,
    0.03314563036811941,
    -0.06629126073623882,
    -0.1767766952966369,
    0.4198446513295126,
    0.9943689110435825,
    0.4198446513295126,
    -0.1767766952966369,
    -0.06629126073623882,
    0.03314563036811941,
];

const BIOR2_4_DEC_HI: [f64; 10] = [
    -0.0,
    0.0,
    -0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR2_4_REC_LO: [f64; 10] = [
    0.0,
    0.0,
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR2_4_REC_HI: [f64; 10] = [
    0.0,
    -0.03314563036811941,
    -0.06629126073623882,
    0.1767766952966369,
    0.4198446513295126,
    -0.9943689110435825,
    0.4198446513295126,
    0.1767766952966369,
    -0.06629126073623882,
    -0.03314563036811941,
];

const BIOR2_6_DEC_LO: [f64; 14] = [
    0.0,
    -0.006905339660024878,
    0.013810679320049757,
    0.04695630968816917,
    -0.1077232986963881,
    -0.16987135563661201,
    0.4474660099696121,
    0.966747552403483,
    0.4474660099696121,
    -0.16987135563661201,
    -0.1077232986963881,
    0.04695630968816917,
    0.013810679320049757,
    -0.006905339660024878,
];

const BIOR2_6_DEC_HI: [f64; 14] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR2_6_REC_LO: [f64; 14] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR2_6_REC_HI: [f64; 14] = [
    0.0,
    0.006905339660024878,
    0.013810679320049757,
    -0.04695630968816917,
    -0.1077232986963881,
    0.16987135563661201,
    0.4474660099696121,
    -0.966747552403483,
    0.4474660099696121,
    0.16987135563661201,
    -0.1077232986963881,
    -0.04695630968816917,
    0.013810679320049757,
    0.006905339660024878,
];

const BIOR2_8_DEC_LO: [f64; 18] = [
    0.0,
    0.0015105430506304422,
    -0.0030210861012608843,
    -0.012947511862546647,
    0.02891610982635418,
    0.05299848189069094,
    -0.13491307360773605,
    -0.16382918343409023,
    0.46257144047591653,
    0.9516421218971786,
    0.46257144047591653,
    -0.16382918343409023,
    -0.13491307360773605,
    0.05299848189069094,
    0.02891610982635418,
    -0.012947511862546647,
    -0.0030210861012608843,
    0.0015105430506304422,
];

const BIOR2_8_DEC_HI: [f64; 18] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.3535533905932738,
    -0.7071067811865476,
    0.3535533905932738,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR2_8_REC_LO: [f64; 18] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.3535533905932738,
    0.7071067811865476,
    0.3535533905932738,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR2_8_REC_HI: [f64; 18] = [
    0.0,
    -0.0015105430506304422,
    -0.0030210861012608843,
    0.012947511862546647,
    0.02891610982635418,
    -0.05299848189069094,
    -0.13491307360773605,
    0.16382918343409023,
    0.46257144047591653,
    -0.9516421218971786,
    0.46257144047591653,
    0.16382918343409023,
    -0.13491307360773605,
    -0.05299848189069094,
    0.02891610982635418,
    0.012947511862546647,
    -0.0030210861012608843,
    -0.0015105430506304422,
];

const BIOR3_1_DEC_LO: [f64; 4] = [
    -0.3535533905932738,
    1.0606601717798212,
    1.0606601717798212,
    -0.3535533905932738,
];

const BIOR3_1_DEC_HI: [f64; 4] = [
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
];

const BIOR3_1_REC_LO: [f64; 4] = [
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
];

const BIOR3_1_REC_HI: [f64; 4] = [
    -0.3535533905932738,
    -1.0606601717798212,
    1.0606601717798212,
    0.3535533905932738,
];

const BIOR3_3_DEC_LO: [f64; 8] = [
    0.06629126073623882,
    -0.1988737822087165,
    -0.15467960838455727,
    0.9943689110435825,
    0.9943689110435825,
    -0.15467960838455727,
    -0.1988737822087165,
    0.06629126073623882,
];

const BIOR3_3_DEC_HI: [f64; 8] = [
    -0.0,
    0.0,
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
    -0.0,
    0.0,
];

const BIOR3_3_REC_LO: [f64; 8] = [
    0.0,
    0.0,
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
    0.0,
    0.0,
];

const BIOR3_3_REC_HI: [f64; 8] = [
    0.06629126073623882,
    0.1988737822087165,
    -0.15467960838455727,
    -0.9943689110435825,
    0.9943689110435825,
    0.15467960838455727,
    -0.1988737822087165,
    -0.06629126073623882,
];

const BIOR3_5_DEC_LO: [f64; 12] = [
    -0.013810679320049757,
    0.04143203796014927,
    0.052480581416189075,
    -0.26792717880896527,
    -0.07181553246425873,
    0.966747552403483,
    0.966747552403483,
    -0.07181553246425873,
    -0.26792717880896527,
    0.052480581416189075,
    0.04143203796014927,
    -0.013810679320049757,
];

const BIOR3_5_DEC_HI: [f64; 12] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR3_5_REC_LO: [f64; 12] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR3_5_REC_HI: [f64; 12] = [
    -0.013810679320049757,
    -0.04143203796014927,
    0.052480581416189075,
    0.26792717880896527,
    -0.07181553246425873,
    -0.966747552403483,
    0.966747552403483,
    0.07181553246425873,
    -0.26792717880896527,
    -0.052480581416189075,
    0.04143203796014927,
    0.013810679320049757,
];

const BIOR3_7_DEC_LO: [f64; 16] = [
    0.0030210861012608843,
    -0.009063258303782653,
    -0.01683176542131064,
    0.074663985074019,
    0.03133297870736289,
    -0.301159125922835,
    -0.02649924094534547,
    0.9516421218971786,
    0.9516421218971786,
    -0.02649924094534547,
    -0.301159125922835,
    0.03133297870736289,
    0.074663985074019,
    -0.01683176542131064,
    -0.009063258303782653,
    0.0030210861012608843,
];

const BIOR3_7_DEC_HI: [f64; 16] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR3_7_REC_LO: [f64; 16] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR3_7_REC_HI: [f64; 16] = [
    0.0030210861012608843,
    0.009063258303782653,
    -0.01683176542131064,
    -0.074663985074019,
    0.03133297870736289,
    0.301159125922835,
    -0.02649924094534547,
    -0.9516421218971786,
    0.9516421218971786,
    0.02649924094534547,
    -0.301159125922835,
    -0.03133297870736289,
    0.074663985074019,
    0.01683176542131064,
    -0.009063258303782653,
    -0.0030210861012608843,
];

const BIOR3_9_DEC_LO: [f64; 20] = [
    -0.0006797443727836989,
    0.002039233118351097,
    0.005060319219611981,
    -0.020618912641105536,
    -0.014112787930175844,
    0.09913478249423216,
    0.012300136269419315,
    -0.32019196836077857,
    0.0020500227115698858,
    0.9421257006782068,
    0.9421257006782068,
    0.0020500227115698858,
    -0.32019196836077857,
    0.012300136269419315,
    0.09913478249423216,
    -0.014112787930175844,
    -0.020618912641105536,
    0.005060319219611981,
    0.002039233118351097,
    -0.0006797443727836989,
];

const BIOR3_9_DEC_HI: [f64; 20] = [
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.1767766952966369,
    0.5303300858899106,
    -0.5303300858899106,
    0.1767766952966369,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR3_9_REC_LO: [f64; 20] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.1767766952966369,
    0.5303300858899106,
    0.5303300858899106,
    0.1767766952966369,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR3_9_REC_HI: [f64; 20] = [
    -0.0006797443727836989,
    -0.002039233118351097,
    0.005060319219611981,
    0.020618912641105536,
    -0.014112787930175844,
    -0.09913478249423216,
    0.012300136269419315,
    0.32019196836077857,
    0.0020500227115698858,
    -0.9421257006782068,
    0.9421257006782068,
    -0.0020500227115698858,
    -0.32019196836077857,
    -0.012300136269419315,
    0.09913478249423216,
    0.014112787930175844,
    -0.020618912641105536,
    -0.005060319219611981,
    0.002039233118351097,
    0.0006797443727836989,
];

const BIOR4_4_DEC_LO: [f64; 10] = [
    0.0,
    0.03782845550726404,
    -0.023849465019556843,
    -0.11062440441843718,
    0.37740285561283066,
    0.8526986790088938,
    0.37740285561283066,
    -0.11062440441843718,
    -0.023849465019556843,
    0.03782845550726404,
];

const BIOR4_4_DEC_HI: [f64; 10] = [
    -0.0,
    -0.06453888262869706,
    0.04068941760916406,
    0.41809227322161724,
    -0.7884856164055829,
    0.41809227322161724,
    0.04068941760916406,
    -0.06453888262869706,
    -0.0,
    0.0,
];

const BIOR4_4_REC_LO: [f64; 10] = [
    0.0,
    -0.06453888262869706,
    -0.04068941760916406,
    0.41809227322161724,
    0.7884856164055829,
    0.41809227322161724,
    -0.04068941760916406,
    -0.06453888262869706,
    0.0,
    0.0,
];

const BIOR4_4_REC_HI: [f64; 10] = [
    0.0,
    -0.03782845550726404,
    -0.023849465019556843,
    0.11062440441843718,
    0.37740285561283066,
    -0.8526986790088938,
    0.37740285561283066,
    0.11062440441843718,
    -0.023849465019556843,
    -0.03782845550726404,
];

const BIOR5_5_DEC_LO: [f64; 12] = [
    0.0,
    0.0,
    0.03968708834740544,
    0.007948108637240322,
    -0.05446378846823691,
    0.34560528195603346,
    0.7366601814282105,
    0.34560528195603346,
    -0.05446378846823691,
    0.007948108637240322,
    0.03968708834740544,
    0.0,
];

const BIOR5_5_DEC_HI: [f64; 12] = [
    -0.013456709459118716,
    -0.002694966880111507,
    0.13670658466432914,
    -0.09350469740093886,
    -0.47680326579848425,
    0.8995061097486484,
    -0.47680326579848425,
    -0.09350469740093886,
    0.13670658466432914,
    -0.002694966880111507,
    -0.013456709459118716,
    0.0,
];

const BIOR5_5_REC_LO: [f64; 12] = [
    0.013456709459118716,
    -0.002694966880111507,
    -0.13670658466432914,
    -0.09350469740093886,
    0.47680326579848425,
    0.8995061097486484,
    0.47680326579848425,
    -0.09350469740093886,
    -0.13670658466432914,
    -0.002694966880111507,
    0.013456709459118716,
    0.0,
];

const BIOR5_5_REC_HI: [f64; 12] = [
    0.0,
    -0.0,
    0.03968708834740544,
    -0.007948108637240322,
    -0.05446378846823691,
    -0.34560528195603346,
    0.7366601814282105,
    -0.34560528195603346,
    -0.05446378846823691,
    -0.007948108637240322,
    0.03968708834740544,
    -0.0,
];

const BIOR6_8_DEC_LO: [f64; 18] = [
    0.0,
    0.0019088317364812906,
    -0.0019142861290887667,
    -0.016990639867602342,
    0.01193456527972926,
    0.04973290349094079,
    -0.07726317316720414,
    -0.09405920349573646,
    0.4207962846098268,
    0.8259229974584023,
    0.4207962846098268,
    -0.09405920349573646,
    -0.07726317316720414,
    0.04973290349094079,
    0.01193456527972926,
    -0.016990639867602342,
    -0.0019142861290887667,
    0.0019088317364812906,
];

const BIOR6_8_DEC_HI: [f64; 18] = [
    -0.0,
    0.0,
    -0.0,
    0.014426282505624435,
    -0.014467504896790148,
    -0.07872200106262882,
    0.04036797903033992,
    0.41784910915027457,
    -0.7589077294536541,
    0.41784910915027457,
    0.04036797903033992,
    -0.07872200106262882,
    -0.014467504896790148,
    0.014426282505624435,
    -0.0,
    0.0,
    -0.0,
    0.0,
];

const BIOR6_8_REC_LO: [f64; 18] = [
    0.0,
    0.0,
    0.0,
    0.014426282505624435,
    0.014467504896790148,
    -0.07872200106262882,
    -0.04036797903033992,
    0.41784910915027457,
    0.7589077294536541,
    0.41784910915027457,
    -0.04036797903033992,
    -0.07872200106262882,
    0.014467504896790148,
    0.014426282505624435,
    0.0,
    0.0,
    0.0,
    0.0,
];

const BIOR6_8_REC_HI: [f64; 18] = [
    0.0,
    -0.0019088317364812906,
    -0.0019142861290887667,
    0.016990639867602342,
    0.01193456527972926,
    -0.04973290349094079,
    -0.07726317316720414,
    0.09405920349573646,
    0.4207962846098268,
    -0.8259229974584023,
    0.4207962846098268,
    0.09405920349573646,
    -0.07726317316720414,
    -0.04973290349094079,
    0.01193456527972926,
    0.016990639867602342,
    -0.0019142861290887667,
    -0.0019088317364812906,
];

pub(crate) fn daubechies(order: usize) -> Option<FilterBank> {
    let bank = match order {
        1 => FilterBank { dec_lo: &DB1_DEC_LO, dec_hi: &DB1_DEC_HI, rec_lo: &DB1_REC_LO, rec_hi: &DB1_REC_HI },
        2 => FilterBank { dec_lo: &DB2_DEC_LO, dec_hi: &DB2_DEC_HI, rec_lo: &DB2_REC_LO, rec_hi: &DB2_REC_HI },
        3 => FilterBank { dec_lo: &DB3_DEC_LO, dec_hi: &DB3_DEC_HI, rec_lo: &DB3_REC_LO, rec_hi: &DB3_REC_HI },
        4 => FilterBank { dec_lo: &DB4_DEC_LO, dec_hi: &DB4_DEC_HI, rec_lo: &DB4_REC_LO, rec_hi: &DB4_REC_HI },
        5 => FilterBank { dec_lo: &DB5_DEC_LO, dec_hi: &DB5_DEC_HI, rec_lo: &DB5_REC_LO, rec_hi: &DB5_REC_HI },
        6 => FilterBank { dec_lo: &DB6_DEC_LO, dec_hi: &DB6_DEC_HI, rec_lo: &DB6_REC_LO, rec_hi: &DB6_REC_HI },
        7 => FilterBank { dec_lo: &DB7_DEC_LO, dec_hi: &DB7_DEC_HI, rec_lo: &DB7_REC_LO, rec_hi: &DB7_REC_HI },
        8 => FilterBank { dec_lo: &DB8_DEC_LO, dec_hi: &DB8_DEC_HI, rec_lo: &DB8_REC_LO, rec_hi: &DB8_REC_HI },
        9 => FilterBank { dec_lo: &DB9_DEC_LO, dec_hi: &DB9_DEC_HI, rec_lo: &DB9_REC_LO, rec_hi: &DB9_REC_HI },
        10 => FilterBank { dec_lo: &DB10_DEC_LO, dec_hi: &DB10_DEC_HI, rec_lo: &DB10_REC_LO, rec_hi: &DB10_REC_HI },
        _ => return None,
    };
    Some(bank)
}

pub(crate) fn biorthogonal(p: usize, q: usize) -> Option<FilterBank> {
    let bank = match (p, q) {
        (1, 1) => FilterBank { dec_lo: &BIOR1_1_DEC_LO, dec_hi: &BIOR1_1_DEC_HI, rec_lo: &BIOR1_1_REC_LO, rec_hi: &BIOR1_1_REC_HI },
        (1, 3) => FilterBank { dec_lo: &BIOR1_3_DEC_LO, dec_hi: &BIOR1_3_DEC_HI, rec_lo: &BIOR1_3_REC_LO, rec_hi: &BIOR1_3_REC_HI },
        (1, 5) => FilterBank { dec_lo: &BIOR1_5_DEC_LO, dec_hi: &BIOR1_5_DEC_HI, rec_lo: &BIOR1_5_REC_LO, rec_hi: &BIOR1_5_REC_HI },
        (2, 2) => FilterBank { dec_lo: &BIOR2_2_DEC_LO, dec_hi: &BIOR2_2_DEC_HI, rec_lo: &BIOR2_2_REC_LO, rec_hi: &BIOR2_2_REC_HI },
        (2, 4) => FilterBank { dec_lo: &BIOR2_4_DEC_LO, dec_hi: &BIOR2_4_DEC_HI, rec_lo: &BIOR2_4_REC_LO, rec_hi: &BIOR2_4_REC_HI },
        (2, 6) => FilterBank { dec_lo: &BIOR2_6_DEC_LO, dec_hi: &BIOR2_6_DEC_HI, rec_lo: &BIOR2_6_REC_LO, rec_hi: &BIOR2_6_REC_HI },
        (2, 8) => FilterBank { dec_lo: &BIOR2_8_DEC_LO, dec_hi: &BIOR2_8_DEC_HI, rec_lo: &BIOR2_8_REC_LO, rec_hi: &BIOR2_8_REC_HI },
        (3, 1) => FilterBank { dec_lo: &BIOR3_1_DEC_LO, dec_hi: &BIOR3_1_DEC_HI, rec_lo: &BIOR3_1_REC_LO, rec_hi: &BIOR3_1_REC_HI },
        (3, 3) => FilterBank { dec_lo: &BIOR3_3_DEC_LO, dec_hi: &BIOR3_3_DEC_HI, rec_lo: &BIOR3_3_REC_LO, rec_hi: &BIOR3_3_REC_HI },
        (3, 5) => FilterBank { dec_lo: &BIOR3_5_DEC_LO, dec_hi: &BIOR3_5_DEC_HI, rec_lo: &BIOR3_5_REC_LO, rec_hi: &BIOR3_5_REC_HI },
        (3, 7) => FilterBank { dec_lo: &BIOR3_7_DEC_LO, dec_hi: &BIOR3_7_DEC_HI, rec_lo: &BIOR3_7_REC_LO, rec_hi: &BIOR3_7_REC_HI },
        (3, 9) => FilterBank { dec_lo: &BIOR3_9_DEC_LO, dec_hi: &BIOR3_9_DEC_HI, rec_lo: &BIOR3_9_REC_LO, rec_hi: &BIOR3_9_REC_HI },
        (4, 4) => FilterBank { dec_lo: &BIOR4_4_DEC_LO, dec_hi: &BIOR4_4_DEC_HI, rec_lo: &BIOR4_4_REC_LO, rec_hi: &BIOR4_4_REC_HI },
        (5, 5) => FilterBank { dec_lo: &BIOR5_5_DEC_LO, dec_hi: &BIOR5_5_DEC_HI, rec_lo: &BIOR5_5_REC_LO, rec_hi: &BIOR5_5_REC_HI },
        (6, 8) => FilterBank { dec_lo: &BIOR6_8_DEC_LO, dec_hi: &BIOR6_8_DEC_HI, rec_lo: &BIOR6_8_REC_LO, rec_hi: &BIOR6_8_REC_HI },
        _ => return None,
    };
    Some(bank)
}
