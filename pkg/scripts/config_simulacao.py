#!/usr/bin/env python3
"""
Configuração do Simulador de Bolhas Periódicas
Valores padrão, tabela de referência e leitura da configuração de execução
(arquivo JSON + flags da linha de comando + variável de ambiente).
"""

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from modelo import ErroConfiguracao

VERSAO = "1.0.0"

# Códigos de saída
SAIDA_OK = 0
SAIDA_CONFIG = 2
SAIDA_NUMERICA = 3
SAIDA_IO = 4

VARIAVEL_WORKERS = "BUBBLECYCLE_WORKERS"

SUBCOMANDOS = ('simulate', 'fixed-points', 'region-map', 'bifurcation', 'bubbles',
               'exponents', 'fit', 'table1', 'attractor')
FORMATOS = ('csv', 'json')

# Integração
RTOL_PADRAO = 1e-10
ATOL_PADRAO = 1e-12
T_END_PADRAO = 1000.0
DT_PADRAO = 0.01
X0_PADRAO = 1.0
Z0_PADRAO = 0.1

# Mapa de regiões (plano b-g)
FAIXA_B_PADRAO = (0.05, 1.5)
FAIXA_G_PADRAO = (-0.25, 0.35)
RESOLUCAO_PADRAO = 50

# Expoentes críticos
DECADAS_G_PADRAO = (-2.0, -6.0)
DECADAS_DELTA_PADRAO = (-4.0, -2.0)
PONTOS_EXPOENTE_PADRAO = 7

# Condições iniciais do teste de independência do atrator em (0.4007, -0.03)
CONDICOES_ATRATOR = [(1.0, 0.1), (5.0, 0.5), (0.01, 50.0)]

# Tabela de referência para b = 1, janela [0, 100]: contagem N, amplitude A, largura w
TABELA_1 = [
    {'g': -0.1768, 'N': 19, 'A': 11.5, 'w': 2.5},
    {'g': -0.1, 'N': 15, 'A': 31.0, 'w': 1.4},
    {'g': -1e-2, 'N': 8, 'A': 630.0, 'w': 0.9},
    {'g': -1e-3, 'N': 6, 'A': 9e3, 'w': 0.8},
    {'g': -1e-4, 'N': 5, 'A': 1.2e5, 'w': 0.75},
    {'g': -1e-5, 'N': 4, 'A': 1.4e6, 'w': 0.7},
    {'g': -1e-6, 'N': 3, 'A': 1.7e7, 'w': 0.7},
    {'g': -1e-7, 'N': 3, 'A': 1.9e8, 'w': 0.7},
    {'g': -1e-8, 'N': 2, 'A': 2.1e9, 'w': 0.7},
    {'g': -1e-9, 'N': 2, 'A': 2.4e10, 'w': 0.7},
    {'g': -1e-10, 'N': 2, 'A': 2.6e11, 'w': 0.7},
]


def workers_padrao() -> int:
    valor = os.getenv(VARIAVEL_WORKERS)
    if valor is None or valor.strip() == "":
        return 1
    try:
        workers = int(valor)
    except ValueError as e:
        raise ErroConfiguracao(f"{VARIAVEL_WORKERS} deve ser inteiro (recebido {valor!r})") from e
    if workers < 1:
        raise ErroConfiguracao(f"{VARIAVEL_WORKERS} deve ser >= 1 (recebido {workers})")
    return workers


@dataclass
class RunConfig:
    subcomando: str
    b: Optional[float] = None
    g: Optional[float] = None
    x0: float = X0_PADRAO
    z0: float = Z0_PADRAO
    t_end: float = T_END_PADRAO
    rtol: float = RTOL_PADRAO
    atol: float = ATOL_PADRAO
    dt: float = DT_PADRAO
    out: Optional[str] = None
    format: str = 'csv'
    workers: int = 1
    window: Optional[Tuple[float, float]] = None
    transient_cutoff: Any = 'auto'
    expansao: bool = False
    peak_index: int = 0
    window_fraction: Optional[float] = None
    b_range: Tuple[float, float] = FAIXA_B_PADRAO
    g_range: Tuple[float, float] = FAIXA_G_PADRAO
    resolution: int = RESOLUCAO_PADRAO
    fixed: str = 'b'
    vary: Optional[Tuple[float, float]] = None
    quantidade: Optional[str] = None
    g_decades: Tuple[float, float] = DECADAS_G_PADRAO
    delta_decades: Tuple[float, float] = DECADAS_DELTA_PADRAO
    pontos: int = PONTOS_EXPOENTE_PADRAO
    condicoes: List[Tuple[float, float]] = field(default_factory=lambda: list(CONDICOES_ATRATOR))

    def como_dict(self) -> Dict:
        dados = asdict(self)
        for chave, valor in dados.items():
            if isinstance(valor, tuple):
                dados[chave] = list(valor)
        dados['condicoes'] = [list(c) for c in self.condicoes]
        return dados


CAMPOS = {f.name for f in fields(RunConfig)}


def _numero(chave: str, valor) -> float:
    if isinstance(valor, bool):
        raise ErroConfiguracao(f"{chave}: esperado número, recebido {valor!r}")
    try:
        numero = float(valor)
    except (TypeError, ValueError) as e:
        raise ErroConfiguracao(f"{chave}: {valor!r} não é um número") from e
    if not math.isfinite(numero):
        raise ErroConfiguracao(f"{chave}: valor não finito ({valor!r})")
    return numero


def _inteiro(chave: str, valor, minimo: int) -> int:
    numero = _numero(chave, valor)
    if numero != int(numero) or numero < minimo:
        raise ErroConfiguracao(f"{chave}: esperado inteiro >= {minimo}, recebido {valor!r}")
    return int(numero)


def interpretar_faixa(chave: str, valor) -> Tuple[float, float]:
    """Aceita 'a..b', 'a,b' ou lista [a, b]."""
    if isinstance(valor, str):
        partes = valor.split('..') if '..' in valor else valor.split(',')
    else:
        partes = list(valor)
    if len(partes) != 2:
        raise ErroConfiguracao(f"{chave}: esperado intervalo 'a..b', recebido {valor!r}")
    return _numero(chave, partes[0]), _numero(chave, partes[1])


def interpretar_condicoes(valor) -> List[Tuple[float, float]]:
    """Aceita 'x0,z0;x0,z0;...' ou lista de pares."""
    if isinstance(valor, str):
        pares = [p for p in valor.split(';') if p.strip()]
        return [interpretar_faixa('condicoes', p) for p in pares]
    return [interpretar_faixa('condicoes', p) for p in valor]


def _validar(config: RunConfig) -> RunConfig:
    if config.subcomando not in SUBCOMANDOS:
        raise ErroConfiguracao(f"Subcomando desconhecido: {config.subcomando!r}")
    if config.format not in FORMATOS:
        raise ErroConfiguracao(f"Formato deve ser um de {FORMATOS} (recebido {config.format!r})")

    for chave in ('b', 'g', 'window_fraction'):
        if getattr(config, chave) is not None:
            setattr(config, chave, _numero(chave, getattr(config, chave)))
    for chave in ('x0', 'z0', 't_end', 'rtol', 'atol', 'dt'):
        setattr(config, chave, _numero(chave, getattr(config, chave)))
    if config.x0 < 0 or config.z0 < 0:
        raise ErroConfiguracao(f"Condição inicial negativa: x0={config.x0}, z0={config.z0}")
    if config.t_end <= 0 or config.rtol <= 0 or config.atol <= 0 or config.dt <= 0:
        raise ErroConfiguracao("t_end, rtol, atol e dt devem ser positivos")

    config.workers = _inteiro('workers', config.workers, 1)
    config.peak_index = _inteiro('peak_index', config.peak_index, 0)
    config.resolution = _inteiro('resolution', config.resolution, 2)
    config.pontos = _inteiro('pontos', config.pontos, 3)

    for chave in ('window', 'b_range', 'g_range', 'vary', 'g_decades', 'delta_decades'):
        valor = getattr(config, chave)
        if valor is not None:
            setattr(config, chave, interpretar_faixa(chave, valor))
    if config.window is not None and config.window[0] >= config.window[1]:
        raise ErroConfiguracao(f"Janela vazia: {config.window}")
    config.condicoes = interpretar_condicoes(config.condicoes)

    corte = config.transient_cutoff
    if corte is None:
        config.transient_cutoff = 'auto'
    elif isinstance(corte, str) and corte in ('auto', 'nenhum'):
        pass
    else:
        config.transient_cutoff = _numero('transient_cutoff', corte)

    if config.fixed not in ('b', 'g'):
        raise ErroConfiguracao(f"fixed deve ser 'b' ou 'g' (recebido {config.fixed!r})")
    if config.quantidade not in (None, 'nu', 'gamma'):
        raise ErroConfiguracao(f"Expoente deve ser 'nu' ou 'gamma' (recebido {config.quantidade!r})")
    if not isinstance(config.expansao, bool):
        raise ErroConfiguracao(f"expansao deve ser booleano (recebido {config.expansao!r})")
    return config


def ler_arquivo(arquivo_json: str) -> Dict:
    """Lê o arquivo de configuração JSON (um objeto)."""
    with open(arquivo_json, encoding='utf-8') as f:
        try:
            dados = json.load(f)
        except json.JSONDecodeError as e:
            raise ErroConfiguracao(f"JSON inválido em {arquivo_json}: {e}") from e
    if not isinstance(dados, dict):
        raise ErroConfiguracao(f"{arquivo_json} deve conter um objeto JSON")
    return dados


def carregar_configuracao(args: Dict, arquivo_json: Optional[str] = None) -> RunConfig:
    """
    Monta a RunConfig: padrões, depois o arquivo JSON, depois as flags.

    Args:
        args: Valores vindos das flags (None = não informado); deve conter 'subcomando'
        arquivo_json: Caminho opcional do arquivo de configuração

    Returns:
        RunConfig validada

    Raises:
        ErroConfiguracao: chave desconhecida ou valor inválido
    """
    valores: Dict[str, Any] = {'workers': workers_padrao()}

    if arquivo_json:
        dados = ler_arquivo(arquivo_json)
        desconhecidas = sorted(set(dados) - CAMPOS)
        if desconhecidas:
            raise ErroConfiguracao(f"Chaves desconhecidas em {arquivo_json}: {desconhecidas}")
        valores.update(dados)

    desconhecidas = sorted(set(args) - CAMPOS)
    if desconhecidas:
        raise ErroConfiguracao(f"Opções desconhecidas: {desconhecidas}")
    valores.update({k: v for k, v in args.items() if v is not None})

    if 'subcomando' not in valores:
        raise ErroConfiguracao("Subcomando não informado")
    return _validar(RunConfig(**valores))
