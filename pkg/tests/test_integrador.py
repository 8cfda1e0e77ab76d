import math

import numpy as np
import pandas as pd
import pytest

from equilibrios import nontrivial_fixed_points
from integrador import (IntegrationConfig, integrate, integrate_with_expansion,
                        locate_extrema)
from modelo import ErroConfiguracao, ErroDominio, ErroSimulacao, ModelParams


def _pico_principal(traj, ate):
    picos = [e for e in traj.eventos_do_tipo('x_max') if e.t < ate]
    return max(picos, key=lambda e: e.valor)


def test_logistica_tem_solucao_exata():
    traj = integrate(ModelParams(0.0, 0.0), IntegrationConfig(t_end=5.0, x0=0.5, z0=0.0))
    assert traj.concluida
    assert float(traj.estado_em(math.log(3.0))[0]) == pytest.approx(0.75, abs=1e-8)
    assert np.all(traj.z == 0.0)
    assert traj.eventos == []


def test_amostras_seguem_a_grade_uniforme():
    traj = integrate(ModelParams(0.2, -0.1), IntegrationConfig(t_end=2.0, x0=1.0, z0=0.1, dt=0.5))
    assert list(traj.amostras.columns) == ['t', 'x', 'z']
    assert set(np.round([0.0, 0.5, 1.0, 1.5, 2.0], 12)) <= set(np.round(traj.t, 12))
    assert np.all(np.diff(traj.t) > 0)


def test_ponto_estavel_fica_parado():
    params = ModelParams(0.4006, -0.03)
    estavel = nontrivial_fixed_points(params)[-1]
    traj = integrate(params, IntegrationConfig(t_end=50.0, x0=estavel.location.x, z0=estavel.location.z))
    assert traj.concluida
    assert traj.eventos == []
    assert np.max(np.abs(traj.x - estavel.location.x)) < 1e-8
    assert np.max(np.abs(traj.z - estavel.location.z)) < 1e-8


def test_foco_fortemente_amortecido_converge():
    params = ModelParams(0.2, -0.1)
    (foco,) = nontrivial_fixed_points(params)
    assert foco.eigenvalues[0].real == pytest.approx(-0.89, abs=0.02)
    traj = integrate(params, IntegrationConfig(t_end=100.0, x0=1.0, z0=0.1))
    assert traj.concluida
    assert traj.x[-1] == pytest.approx(foco.location.x, abs=1e-6)
    assert traj.z[-1] == pytest.approx(foco.location.z, abs=1e-6)


def test_regiao_sem_equilibrio_diverge():
    traj = integrate(ModelParams(1.0, 0.1), IntegrationConfig(t_end=1000.0, x0=1.0, z0=0.1))
    assert traj.status == 'diverged'
    assert not traj.concluida
    assert traj.t_final < 1000.0
    assert max(traj.ultimo_estado) > 1e100
    assert traj.t[-1] == pytest.approx(traj.t_final)


@pytest.mark.parametrize("opcoes", [
    {'t_end': 0.0},
    {'t_end': -1.0},
    {'rtol': 0.0},
    {'atol': -1e-12},
    {'dt': 20.0},
    {'t_end': math.inf},
    {'metodo': 'Euler'},
])
def test_configuracao_invalida(opcoes):
    base = {'t_end': 10.0, 'x0': 1.0, 'z0': 0.1}
    base.update(opcoes)
    with pytest.raises(ErroConfiguracao):
        IntegrationConfig(**base)


def test_condicao_inicial_negativa():
    with pytest.raises(ErroDominio):
        integrate(ModelParams(0.4, -0.03), IntegrationConfig(t_end=10.0, x0=-1.0, z0=0.1))


def test_integracao_e_deterministica():
    params = ModelParams(0.4, -0.029)
    config = IntegrationConfig(t_end=140.0, x0=1.0, z0=0.1)
    primeira = integrate(params, config)
    segunda = integrate(params, config)
    pd.testing.assert_frame_equal(primeira.amostras, segunda.amostras)
    assert primeira.eventos == segunda.eventos


def test_trajetoria_permanece_nao_negativa():
    traj = integrate(ModelParams(0.4, -0.029), IntegrationConfig(t_end=300.0, x0=1.0, z0=0.1))
    assert (traj.amostras[['x', 'z']] >= 0).all().all()


def test_tolerancias_convergem():
    params = ModelParams(0.4, -0.029)
    fina = integrate(params, IntegrationConfig(t_end=140.0, x0=1.0, z0=0.1))
    grossa = integrate(params, IntegrationConfig(t_end=140.0, x0=1.0, z0=0.1, rtol=1e-8, atol=1e-10))
    assert _pico_principal(grossa, 130.0).valor == pytest.approx(_pico_principal(fina, 130.0).valor, rel=1e-4)
    assert _pico_principal(grossa, 130.0).t == pytest.approx(_pico_principal(fina, 130.0).t, abs=1e-3)


def _erro_logistico(passo):
    # tolerâncias frouxas: o passo fica preso em max_step e o erro mede a ordem do método
    config = IntegrationConfig(t_end=6.0, x0=0.1, z0=0.0, rtol=1.0, atol=1.0, max_step=passo)
    traj = integrate(ModelParams(0.0, 0.0), config)
    exato = 0.1 * math.exp(6.0) / (0.9 + 0.1 * math.exp(6.0))
    return abs(traj.ultimo_estado[0] - exato)


def test_ordem_de_convergencia_pelo_menos_quatro():
    grosso, fino = _erro_logistico(1.0), _erro_logistico(0.5)
    assert fino < grosso
    assert math.log2(grosso / fino) >= 4.0


@pytest.mark.parametrize("b, g, x0, t_end", [
    (1.0, -0.05, 3.0, 150.0),
    (1.0, -0.001, 3.0, 150.0),
    (0.4, -0.029, 1.0, 300.0),
])
def test_expoente_de_expansao_negativo_na_regiao_c(b, g, x0, t_end):
    traj = integrate_with_expansion(ModelParams(b, g), IntegrationConfig(t_end=t_end, x0=x0, z0=0.1))
    assert traj.concluida
    amostras = traj.amostras[traj.amostras['t'] >= 1.0]
    assert (amostras['lambda'] < 0).all()


def test_primeira_bolha_e_expoente_de_expansao():
    traj = integrate_with_expansion(ModelParams(0.4, -0.029), IntegrationConfig(t_end=140.0, x0=1.0, z0=0.1))
    pico = _pico_principal(traj, 130.0)
    # x = 61.717 é atingido na subida (t ~ 122.163), antes do máximo
    assert pico.valor == pytest.approx(113.534, rel=1e-3)
    assert pico.t == pytest.approx(122.890, abs=5e-3)
    assert float(traj.estado_em(122.163)[0]) == pytest.approx(61.717, rel=5e-3)

    assert traj.lambda_em(pico.t) == pytest.approx(-0.878, abs=0.01)
    maximo = traj.expansao.maximo_antes(pico.t)
    assert maximo.valor == pytest.approx(-0.864, abs=0.01)
    assert maximo.t == pytest.approx(121.48, abs=0.5)
    assert maximo.t < pico.t

    depois = [e for e in traj.eventos_do_tipo('z_min') if e.t > pico.t]
    assert depois and depois[0].t - pico.t < 5.0

    assert math.isnan(traj.amostras["lambda"].iloc[0])


def test_extremos_refinados_zeram_a_derivada():
    traj = integrate(ModelParams(0.4, -0.029), IntegrationConfig(t_end=140.0, x0=1.0, z0=0.1))
    for evento in locate_extrema(traj, 'x_max'):
        antes = float(traj.estado_em(evento.t - 1e-3)[0])
        depois = float(traj.estado_em(evento.t + 1e-3)[0])
        assert evento.valor >= antes and evento.valor >= depois
    assert locate_extrema(traj, 'x_max', janela=(50.0, 50.0)) == []


def test_eventos_de_lambda_exigem_expansao():
    traj = integrate(ModelParams(0.4, -0.029), IntegrationConfig(t_end=10.0, x0=1.0, z0=0.1))
    with pytest.raises(ErroSimulacao):
        locate_extrema(traj, 'lambda_max')
    with pytest.raises(ErroSimulacao):
        traj.lambda_em(1.0)
    with pytest.raises(ErroConfiguracao):
        locate_extrema(traj, 'y_max')


@pytest.mark.lento
def test_segunda_ancora_perto_do_cuspide():
    traj = integrate_with_expansion(ModelParams(0.38, -0.0117), IntegrationConfig(t_end=510.0, x0=1.0, z0=0.1))
    pico = _pico_principal(traj, 505.0)
    assert pico.valor == pytest.approx(393.5, rel=2e-2)
    assert pico.t == pytest.approx(501.5, abs=1.0)
    maximo = traj.expansao.maximo_antes(pico.t)
    assert maximo.t == pytest.approx(499.74, abs=1.0)
    assert maximo.valor == pytest.approx(-0.9535, abs=0.01)
    assert traj.lambda_em(pico.t) == pytest.approx(-0.9607, abs=0.01)
