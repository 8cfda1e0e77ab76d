import math

import numpy as np
import pytest

import registro
from equilibrios import (B0, Kind, RegionLabel, bifurcation_scan, bogdanov_takens_point,
                         characteristic_exponents, classify, critical_b_of_g, critical_g0,
                         critical_gc, critical_lines, cusp_point, cusp_residuals, fold_curve_point,
                         fold_residuals, hopf_line, node_focus_b, node_focus_boundary,
                         nontrivial_fixed_points, phi_roots, region_label,
                         rotular_ponto, trivial_fixed_points)
from modelo import ErroDominio, ErroPrecondicao, JacobianMatrix, ModelParams, State, jacobian


def _ordenados(valores):
    return sorted((complex(v) for v in valores), key=lambda v: (v.real, v.imag))


# ---------------------------------------------------------------------------
# Pontos fixos

def test_pontos_triviais_sao_instaveis():
    origem, um_zero, zero_um = trivial_fixed_points(ModelParams(0.4, -0.03))
    assert origem.kind == Kind.UNSTABLE_NODE
    assert um_zero.kind == Kind.SADDLE
    assert zero_um.kind == Kind.SADDLE
    assert (um_zero.location.x, um_zero.location.z) == (1.0, 0.0)


def test_classificacao_basica():
    assert classify((-1 + 2j, -1 - 2j)) == Kind.STABLE_FOCUS
    assert classify((0.5 + 1j, 0.5 - 1j)) == Kind.UNSTABLE_FOCUS
    assert classify((-2.0, -1.0)) == Kind.STABLE_NODE
    assert classify((1.0, 3.0)) == Kind.UNSTABLE_NODE
    assert classify((-1.0, 2.0)) == Kind.SADDLE
    assert classify((1j, -1j)) == Kind.DEGENERATE
    assert classify((-1.0, -1.0)) == Kind.DEGENERATE


def test_autovalor_repetido_de_matriz_escalar_e_no_estrela():
    estrela = JacobianMatrix(-1.0, 0.0, 0.0, -1.0)
    assert classify((-1.0, -1.0), estrela) == Kind.STABLE_NODE


def test_tres_pontos_perto_da_dobra():
    params = ModelParams(0.4006, -0.03)
    pontos = nontrivial_fixed_points(params)
    assert len(pontos) == 3
    assert [fp.branch_index for fp in pontos] == [1, 2, 3]
    assert [fp.kind for fp in pontos] == [Kind.UNSTABLE_FOCUS, Kind.SADDLE, Kind.STABLE_NODE]
    assert pontos[0].location.x == pytest.approx(58.26, rel=1e-2)
    assert pontos[1].location.x > pontos[2].location.x
    assert pontos[1].location.x == pytest.approx(3.08, rel=2e-2)
    assert pontos[2].location.x == pytest.approx(2.928, rel=2e-2)

    foco = pontos[0].eigenvalues
    assert foco[0].real == pytest.approx(1.03, abs=2e-2)
    assert abs(foco[0].imag) == pytest.approx(1.72, abs=2e-2)
    assert pontos[1].eigenvalues[0].real < 0 < pontos[1].eigenvalues[1].real
    assert max(v.real for v in pontos[2].eigenvalues) < 0


def test_pontos_satisfazem_as_equacoes_de_equilibrio():
    for b, g in ((0.4006, -0.03), (0.2, 0.1), (1.0, -0.2), (0.3, -0.01)):
        for fp in nontrivial_fixed_points(ModelParams(b, g)):
            x, z = fp.location.x, fp.location.z
            assert math.log(x) == pytest.approx(b * x * z, rel=1e-9, abs=1e-12)
            assert z == pytest.approx(math.exp(g * x), rel=1e-12)


@pytest.mark.parametrize("b, g", [(0.4006, -0.03), (0.2, 0.1), (1.0, -0.2), (0.3, -0.01), (1.5, -0.5)])
def test_identidades_exponenciais_nos_pontos_fixos(b, g):
    for fp in nontrivial_fixed_points(ModelParams(b, g)):
        x, z = fp.location.x, fp.location.z
        assert abs(math.exp(-b * x * z) - 1.0 / x) < 1e-10
        assert abs(math.exp(-g * x) - 1.0 / z) < 1e-10


def _trocas_de_sinal_de_phi(b, g, pontos=10 ** 6):
    u = np.logspace(-3.0, 9.0, pontos)
    with np.errstate(over='ignore', invalid='ignore'):
        phi = np.log(u) - b * u * np.exp(g * u)
    sinais = np.sign(phi)
    return int(np.count_nonzero(sinais[:-1] != sinais[1:]))


def test_todas_as_raizes_sao_encontradas():
    gerador = np.random.default_rng(2024)
    for b, g in zip(gerador.uniform(0.01, 2.0, 20), gerador.uniform(-0.5, 0.5, 20)):
        raizes = phi_roots(float(b), float(g))
        assert len(raizes) == _trocas_de_sinal_de_phi(float(b), float(g)), (b, g, raizes)


def test_expoentes_caracteristicos_conferem_com_o_jacobiano():
    for b, g in ((0.4006, -0.03), (0.2, 0.1), (1.0, -0.2), (0.2, -0.1)):
        params = ModelParams(b, g)
        for fp in nontrivial_fixed_points(params):
            fechados = _ordenados(characteristic_exponents(params, fp.location))
            numericos = _ordenados(jacobian(params, fp.location).autovalores())
            for a, c in zip(fechados, numericos):
                assert abs(a - c) <= 1e-7 * max(1.0, abs(c))


def test_expoentes_fora_de_um_ponto_fixo():
    with pytest.raises(ErroPrecondicao):
        characteristic_exponents(ModelParams(0.4, -0.03), State(2.0, 0.5))
    with pytest.raises(ErroPrecondicao):
        characteristic_exponents(ModelParams(0.4, -0.03), State(0.0, 1.0))


def test_sem_acoplamento_em_x():
    pontos = nontrivial_fixed_points(ModelParams(0.0, -0.5))
    assert len(pontos) == 1
    assert pontos[0].location.x == pytest.approx(1.0, abs=1e-12)
    assert pontos[0].location.z == pytest.approx(math.exp(-0.5), rel=1e-12)


def test_regiao_sem_pontos_nao_triviais():
    assert nontrivial_fixed_points(ModelParams(1.0, 0.1)) == []


def test_autovalores_imaginarios_sobre_hopf_sao_degenerados():
    b = 1.0
    params = ModelParams(b, hopf_line(b))
    estado = State(math.e ** 2, 2.0 / math.e ** 2)
    autovalores = characteristic_exponents(params, estado)
    assert abs(autovalores[0].real) < 1e-12
    assert classify(autovalores) == Kind.DEGENERATE


# ---------------------------------------------------------------------------
# Linhas críticas

@pytest.mark.parametrize("u", [1.5, 2.0, 3.0, 10.0, 100.0, 1e4])
def test_residuos_da_dobra(u):
    phi, dphi = fold_residuals(u)
    assert phi < 1e-10
    assert dphi < 1e-10


def test_pontos_conhecidos_da_dobra():
    b, g = fold_curve_point(math.e)
    assert b == pytest.approx(1.0 / math.e, rel=1e-14)
    assert g == pytest.approx(0.0, abs=1e-15)
    b, g = fold_curve_point(3.0)
    assert b == pytest.approx(0.4006, abs=1e-4)
    assert g == pytest.approx(-0.0299, abs=1e-4)
    with pytest.raises(ErroDominio):
        fold_curve_point(1.0)


def test_cuspide():
    b0, g, u = cusp_point()
    assert b0 == pytest.approx(0.4701, abs=1e-4)
    assert g == pytest.approx(-0.0757, abs=1e-4)
    assert u == pytest.approx(math.exp((1 + math.sqrt(5)) / 2), rel=1e-14)
    assert all(r < 1e-10 for r in cusp_residuals())
    assert B0 == b0


def test_bogdanov_takens_fica_sobre_hopf():
    b, g = bogdanov_takens_point()
    assert b == pytest.approx(2.0 * math.exp(-1.5), rel=1e-12)
    assert g == pytest.approx(-0.5 / math.e ** 2, rel=1e-12)
    assert hopf_line(b) == pytest.approx(g, abs=1e-14)


@pytest.mark.parametrize("funcao, argumento, esperado, tolerancia", [
    (critical_gc, 1.0, -0.176862964, 2e-6),
    (critical_gc, 0.5, -0.083056, 1e-6),
    (critical_gc, 0.4, -0.02942, 2e-4),
    (critical_gc, 0.2, 0.276, 1e-3),
    (critical_g0, 0.4, -0.0552, 5e-4),
    (critical_g0, 0.2, -0.0194, 2e-4),
    (critical_b_of_g, -0.2, 1.18645, 1e-5),
    (critical_b_of_g, -0.03, 0.400691, 1e-5),
    (node_focus_boundary, 0.2, -0.0471, 2e-4),
    (node_focus_boundary, 0.4, -0.0849, 2e-4),
    (node_focus_b, -0.03, 0.1242, 2e-4),
])
def test_valores_das_linhas_criticas(funcao, argumento, esperado, tolerancia):
    assert funcao(argumento) == pytest.approx(esperado, abs=tolerancia)


def test_g_c_e_positiva_somente_abaixo_de_um_sobre_e():
    assert critical_gc(0.3) > 0
    assert critical_gc(0.36) > 0
    assert critical_gc(0.38) < 0


def test_inversa_de_g_c():
    for b in (0.1, 0.3, 0.42, 0.9, 1.4):
        assert critical_b_of_g(critical_gc(b)) == pytest.approx(b, rel=1e-8)


def test_fronteira_no_foco_e_sua_inversa():
    for b in (0.05, 0.1, 0.2):
        assert node_focus_b(node_focus_boundary(b)) == pytest.approx(b, rel=1e-9)


@pytest.mark.parametrize("g", [-5.0, -10.0, -20.0])
def test_limite_de_acoplamento_forte(g):
    esperado = math.exp(math.log(2.0) - 2.0 - g * math.e ** 2)
    assert critical_b_of_g(g) == pytest.approx(esperado, rel=1e-9)
    resultado = region_label(ModelParams(1.0, g))
    assert resultado.label == RegionLabel.A


def test_ponto_estavel_tende_a_um_zero_com_acoplamento_forte():
    estaveis = [nontrivial_fixed_points(ModelParams(1.0, g))[-1] for g in (-5.0, -10.0, -20.0)]
    xs = [fp.location.x for fp in estaveis]
    zs = [fp.location.z for fp in estaveis]
    assert all(fp.branch_index == 3 for fp in estaveis)
    assert xs[0] > xs[1] > xs[2] > 1.0
    assert zs[0] > zs[1] > zs[2] > 0.0
    assert xs[2] - 1.0 < 1e-8
    assert zs[2] < 1e-8


def test_amostras_da_dobra_sao_raizes_duplas():
    linhas = critical_lines(amostras=60)
    assert len(linhas.fold_samples) == 60
    for u, b, g in linhas.fold_samples:
        assert (b, g) == fold_curve_point(u)
        phi, dphi = fold_residuals(u)
        assert phi < 1e-10 and dphi < 1e-10
    tabela = linhas.como_dataframe()
    assert {'gc', 'g0', 'hopf', 'g_n', 'cusp', 'bogdanov_takens', 'ponto_duplo'} == set(tabela['curva'])
    assert tabela[tabela['curva'] == 'hopf']['b'].min() == pytest.approx(bogdanov_takens_point()[0])


def test_dominios_das_linhas_criticas():
    with pytest.raises(ErroDominio):
        critical_g0(0.6)
    with pytest.raises(ErroDominio):
        critical_gc(0.0)
    with pytest.raises(ErroDominio):
        node_focus_boundary(0.6)
    with pytest.raises(ErroDominio):
        node_focus_b(0.01)


# ---------------------------------------------------------------------------
# Regiões

@pytest.mark.parametrize("b, g, rotulo", [
    (1.0, -0.2, RegionLabel.A),
    (1.0, -0.05, RegionLabel.C),
    (0.2, 0.1, RegionLabel.D),
    (0.3, -0.01, RegionLabel.B),
    (1.0, 0.1, RegionLabel.E),
    (0.2, -0.1, RegionLabel.A),
])
def test_rotulos_de_regiao(b, g, rotulo):
    resultado = region_label(ModelParams(b, g))
    assert resultado.label == rotulo
    assert not resultado.boundary
    assert resultado.concorda


def test_fronteira_sobre_a_linha_critica():
    resultado = region_label(ModelParams(1.0, critical_gc(1.0)))
    assert resultado.label is None
    assert resultado.boundary
    assert set(resultado.nearest) == {RegionLabel.A, RegionLabel.C}
    assert rotular_ponto(1.0, critical_gc(1.0))['region'] == 'boundary'


@pytest.mark.parametrize("g", [-0.1, -0.2, 0.05])
def test_reta_b_um_sobre_e_nao_e_fronteira(g):
    resultado = region_label(ModelParams(1.0 / math.e + 1e-7, g))
    assert not resultado.boundary
    assert resultado.label == resultado.census_label == resultado.inequality_label


def test_ponto_duplo_continua_fronteira():
    resultado = region_label(ModelParams(1.0 / math.e + 1e-7, 1e-7))
    assert resultado.boundary
    assert resultado.label is None


def test_reta_b0_fora_da_cuspide_nao_e_fronteira():
    resultado = region_label(ModelParams(B0 + 1e-8, -0.2))
    assert not resultado.boundary
    assert resultado.label == RegionLabel.A


@pytest.mark.parametrize("b", [0.45, 0.46])
def test_linha_de_hopf_junto_a_cuspide_e_fronteira(b):
    resultado = region_label(ModelParams(b, hopf_line(b)))
    assert resultado.boundary
    assert resultado.label is None


def test_regiao_exige_b_positivo():
    with pytest.raises(ErroPrecondicao):
        region_label(ModelParams(0.0, -0.1))


@pytest.mark.parametrize("b", [0.1, 0.3, 0.42, 0.6, 1.0, 1.5])
def test_censo_concorda_com_as_desigualdades(b):
    for g in np.linspace(-0.25, 0.35, 41):
        resultado = region_label(ModelParams(b, float(g)))
        if resultado.boundary:
            continue
        assert resultado.concorda, (b, g, resultado)


def test_discordancia_junto_a_cuspide_usa_o_censo():
    b = 0.5 * (bogdanov_takens_point()[0] + B0)
    g = critical_gc(b) + 1e-4
    resultado = region_label(ModelParams(b, g))
    if resultado.boundary:
        pytest.skip("ponto caiu sobre uma linha crítica")
    assert resultado.label == resultado.census_label
    if not resultado.concorda:
        assert any("AVISO" in linha for linha in registro.historico())


# ---------------------------------------------------------------------------
# Varreduras de bifurcação

def test_varredura_em_b_com_g_fixo_perto_da_dobra():
    ramo = bifurcation_scan(('g', -0.03), np.linspace(0.01, 0.6, 120))
    assert ramo.varying_parameter == 'b'
    assert [a.nome for a in ramo.annotations] == ['b_n', 'b_1', 'b_2']
    b_n, b_1, b_2 = (a.valor for a in ramo.annotations)
    assert b_n == pytest.approx(0.1242, abs=1e-3)
    assert critical_g0(b_1) == pytest.approx(-0.03, abs=1e-6)
    assert b_2 == pytest.approx(0.400691, abs=1e-5)


def test_varredura_em_b_atravessa_hopf():
    ramo = bifurcation_scan(('g', -0.2), np.linspace(0.9, 1.4, 60))
    assert len(ramo.annotations) == 1
    assert ramo.annotations[0].tipo == 'hopf'
    assert ramo.annotations[0].valor == pytest.approx(1.18645, abs=1e-4)


def test_varredura_em_g_com_b_fixo():
    ramo = bifurcation_scan(('b', 0.2), np.linspace(-0.1, 0.35, 90))
    assert [a.nome for a in ramo.annotations] == ['g_n', 'g_0', 'g=0', 'g_c']
    valores = [a.valor for a in ramo.annotations]
    assert valores[0] == pytest.approx(-0.0471, abs=1e-3)
    assert valores[1] == pytest.approx(-0.0194, abs=2e-4)
    assert abs(valores[2]) < 1e-4
    assert valores[3] == pytest.approx(0.276, abs=1e-3)

    tabela = ramo.como_dataframe()
    assert list(tabela.columns) == ['param', 'x_star', 'z_star', 'kind', 'branch']
    assert set(tabela['branch']) <= {1, 2, 3}


def test_varredura_rejeita_grade_nao_monotona():
    with pytest.raises(ErroDominio):
        bifurcation_scan(('b', 0.2), [0.0, 0.1, 0.05])
    with pytest.raises(ErroDominio):
        bifurcation_scan(('x', 0.2), [0.0, 0.1])
